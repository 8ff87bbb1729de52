import json
import math

import numpy as np
import pytest

import kslab


def test_version():
    assert kslab.__version__ == "0.1.0"


def test_harmonic_frame_is_tight():
    F = kslab.harmonic_frame(2, 4)
    s = kslab.spectral_summary(F)
    assert s["lower_frame_bound"] == pytest.approx(2.0, abs=1e-12)
    assert s["upper_frame_bound"] == pytest.approx(2.0, abs=1e-12)


def test_naimark_projection():
    F = kslab.parseval_normalize(kslab.random_unit_frame(3, 7, seed=4))
    d = kslab.naimark_dilate(F)
    assert d["ambient_dim"] == 7


def test_dilate_operator_dimension():
    T = np.array([[1.0, 0.0], [0.0, 0.0]])
    assert kslab.dilate_operator(T)["ambient_dim"] == 3


def test_pave_swap():
    r = kslab.pave(np.array([[0.0, 1.0], [1.0, 0.0]]), 2, 0.5)
    assert r["achieved"] == 0.0
    assert r["verdict"] is True


def test_erasure_and_kadec():
    F = kslab.parseval_normalize(kslab.harmonic_frame(3, 7))
    r = kslab.erasure_robustness(F, 2)
    assert r["worst_lower_bound"] > 0.0
    assert kslab.kadec_bounds(1.0, 1.0, math.pi, 0.0)["L"] == 0.25


def test_mixed_norm():
    for n in (4, 16):
        expected = (math.sqrt(2) + 1 / math.sqrt(n)) / (math.sqrt(2) + 1)
        assert kslab.mixed_norm(kslab.mixed_norm_counterexample(n)) == pytest.approx(expected, abs=1e-12)


def test_contract_violation_is_value_error():
    with pytest.raises(ValueError):
        kslab.pave(np.ones((2, 3)), 2, 0.5)


def test_cli_round_trip_and_verify(tmp_path):
    path = tmp_path / "h.json"
    kslab.run("gen", "--harmonic", "n=2", "M=6", "--out", path)
    report = kslab.run("decompose", "--input", path, "--mode", "feichtinger", "--bound", "0.5", "--r-max", "4")
    assert report["kslab_report"] == 1
    assert kslab.verify(report)["verified"] is True
    report["result"]["partition"]["blocks"] = [list(range(6))]
    assert kslab.verify(report)["verified"] is False
    code, _, _ = kslab.run_cli(["frobnicate"])
    assert code == 2

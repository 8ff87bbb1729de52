"""Finite-dimensional frame, paving and decomposition toolkit."""

import json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_cli


def run(*args):
    """Run a kslab command and return its parsed JSON report.

    Raises RuntimeError carrying the exit code and stderr on a nonzero exit.
    """
    code, out, err = run_cli([str(a) for a in args])
    if code != 0:
        raise RuntimeError(f"kslab {args[0] if args else ''} exited {code}: {err.strip()}")
    return json.loads(out) if out.strip() else None

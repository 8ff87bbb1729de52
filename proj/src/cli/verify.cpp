#include <cmath>

#include "kslab/cli.hpp"
#include "options.hpp"

namespace kslab {

namespace {

using cli::Options;

struct Checker {
  std::vector<std::string> reasons;
  double tol = 1e-9;

  void expect(bool cond, const std::string& what) {
    if (!cond) reasons.push_back(what);
  }
  void near(double reported, double recomputed, const std::string& what, double scale = 1.0) {
    if (!(std::abs(reported - recomputed) <= tol * std::max(1.0, scale))) {
      reasons.push_back(what + ": reported " + std::to_string(reported) + ", recomputed " + std::to_string(recomputed));
    }
  }
};

double num(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) throw ContractViolation(std::string("report result lacks ") + key);
  return j[key].get<double>();
}

bool flag(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_boolean()) throw ContractViolation(std::string("report result lacks ") + key);
  return j[key].get<bool>();
}

Partition partition_of(const Json& result, std::size_t size) {
  if (!result.contains("partition") || result["partition"].is_null()) throw ContractViolation("report has no partition");
  return partition_from_json(result["partition"], size);
}

void check_block_norms(Checker& c, const Matrix& H, const Partition& p, const Json& r) {
  const BlockNorms bn = block_norms(H, p);
  c.near(num(r, "achieved"), bn.max, "achieved block norm", bn.max);
  const double bound = num(r, "bound");
  const bool verdict = bn.max <= bound + c.tol * std::max(1.0, std::abs(bound));
  c.expect(flag(r, "verdict") == verdict, "verdict inconsistent with the recomputed block norms");
}

void verify_pave(Checker& c, const Options& o, const Json& input, const Json& r) {
  const Matrix T = matrix_from_json(input);
  const Partition p = partition_of(r, static_cast<std::size_t>(T.rows()));
  c.expect(p.blocks() <= o.r_max.value_or(2), "partition has more than r_max blocks");
  const double eps = o.epsilon.value_or(0.5);
  if (o.mode == "projection") {
    c.expect(is_projection(T, c.tol), "input is not a projection");
    c.near(num(r, "bound"), 1.0 - eps, "bound");
    check_block_norms(c, T, p, r);
  } else {
    const Matrix off = off_diagonal_part(T);
    const double ref = operator_norm(off);
    c.near(num(r, "reference_norm"), ref, "reference norm", ref);
    c.near(num(r, "bound"), eps * ref, "bound", ref);
    check_block_norms(c, off, p, r);
  }
}

void verify_weaver(Checker& c, const Options& o, const Json& input, const Json& r) {
  const Frame fr = frame_from_json(input);
  const Partition p = partition_of(r, fr.size());
  c.expect(p.blocks() <= o.r_max.value_or(2), "partition has more than r_max blocks");
  const double B = o.bound ? *o.bound : spectral_summary(fr).bessel_bound;
  c.near(num(r, "bound"), B - o.epsilon.value_or(0.1), "bound", B);
  check_block_norms(c, gram_matrix(fr), p, r);
}

void verify_decompose(Checker& c, const Options& o, const Json& input, const Json& r) {
  const Frame fr = frame_from_json(input);
  if (o.mode == "tp1") {
    const Partition p = partition_of(r, fr.size());
    const double delta = num(r, "delta");
    const auto members = p.nonempty_members();
    const Json& reported = r.at("block_delta");
    c.expect(reported.size() == members.size(), "block_delta length differs from the block count");
    bool all = true;
    for (std::size_t b = 0; b < members.size(); ++b) {
      const int s = std::min<int>(static_cast<int>(num(r, "S")), static_cast<int>(members[b].size()));
      const double d = restricted_isometry(subframe(fr, members[b]), s).delta;
      if (b < reported.size()) c.near(reported[b].get<double>(), d, "block " + std::to_string(b) + " delta_S");
      all = all && d <= delta;
    }
    c.expect(flag(r, "verified") == all, "verified flag inconsistent with recomputed block constants");
    return;
  }
  if (!flag(r, "verdict")) {
    c.expect(r["partition"].is_null(), "negative verdict carries a partition");
    return;
  }
  const Partition p = partition_of(r, fr.size());
  c.expect(p.blocks() <= static_cast<int>(num(r, "r_max")), "partition has more than r_max blocks");
  const double param = num(r, "parameter");
  const bool riesz = o.mode.empty() || o.mode == "riesz";
  for (const auto& block : p.nonempty_members()) {
    const RieszCertificate cert = riesz_bounds(fr, block);
    const bool ok = riesz ? cert.lower >= 1.0 - param - c.tol && cert.upper <= 1.0 + param + c.tol
                          : cert.lower >= param - c.tol;
    c.expect(ok, "a block violates the Riesz bound requirement");
  }
}

void verify_radohorn(Checker& c, const Options& o, const Json& input, const Json& r) {
  const Frame fr = frame_from_json(input);
  const int rr = static_cast<int>(num(r, "r"));
  const Tolerances tol = cli::tolerances(o);
  if (!r["partition"].is_null()) {
    const Partition p = partition_of(r, fr.size());
    c.expect(p.blocks() <= rr, "more than r blocks");
    for (const auto& block : p.nonempty_members()) {
      c.expect(numeric_rank(select_columns(fr.synthesis, block), tol) == block.size(), "a block is linearly dependent");
    }
  } else {
    const IndexSet J = index_set_from_json(r.at("violator"), "/result/violator");
    c.expect(!J.empty() && J.size() > static_cast<std::size_t>(rr) * numeric_rank(select_columns(fr.synthesis, J), tol),
             "reported violator satisfies |J| <= r rank(J)");
  }
}

void verify_erasure(Checker& c, const Options& o, const Json& input, const Json& r) {
  const Frame fr = frame_from_json(input);
  const Tolerances tol = cli::tolerances(o);
  if (o.mode.empty() || o.mode == "robustness") {
    const ErasureReport e = erasure_robustness(fr, static_cast<int>(num(r, "k")), 0, o.budget.value_or(1'000'000), tol);
    c.near(num(r, "worst_lower_bound"), e.worst_lower_bound, "worst lower bound");
    const IndexSet J = index_set_from_json(r.at("worst_subset"), "/result/worst_subset");
    const Frame rest = subframe(fr, complement(fr.size(), J));
    const double witness = rest.size() ? sym_eigenvalues(frame_operator(rest))(0) : 0.0;
    c.near(witness, num(r, "worst_lower_bound"), "witness subset lower bound");
  } else if (o.mode == "cc") {
    const IndexSet J = index_set_from_json(r.at("witness"), "/result/witness");
    const IndexSet Jc = complement(fr.size(), J);
    auto lower = [&](const IndexSet& s) { return s.empty() ? 0.0 : sym_eigenvalues(frame_operator(subframe(fr, s)))(0); };
    const double v = std::min(lower(J), lower(Jc));
    c.near(num(r, "best"), v, "witness bipartition value");
    c.expect(flag(r, "verdict") == (v >= num(r, "epsilon")), "verdict inconsistent with the witness");
  } else {
    const Partition p = partition_of(r, fr.size());
    double worst = 0.0;
    for (const auto& block : p.nonempty_members()) {
      const RealVector ev = sym_eigenvalues(frame_operator(subframe(fr, block)));
      worst = std::max(worst, ev(ev.size() - 1));
    }
    c.near(num(r, "achieved"), worst, "largest block Bessel bound");
    c.expect(flag(r, "verdict") == (worst <= 1.0 - num(r, "epsilon") + tol.check_tol), "verdict inconsistent");
  }
}

void verify_dilate(Checker& c, const Json& input, const Json& r) {
  const Json& d = r.at("dilation");
  const Matrix P = matrix_from_json(d.at("projection"));
  const Matrix E = matrix_from_json(d.at("embedding"));
  const double t = c.tol * std::max<double>(1.0, static_cast<double>(P.rows()));
  c.expect(is_projection(P, t), "projection is not an orthogonal projection");
  c.expect((E.adjoint() * E - Matrix::Identity(E.cols(), E.cols())).norm() <= t, "embedding is not an isometry");
  c.expect((E * E.adjoint() - P).norm() <= t, "projection differs from the embedding range");
  if (r.at("kind") == "naimark") {
    c.expect((P - gram_matrix(frame_from_json(input))).norm() <= t, "projection differs from the input Gram matrix");
  } else {
    Matrix T = matrix_from_json(input);
    const Index n = T.rows();
    if (d.at("normalized").get<bool>()) T /= num(d, "input_norm");
    c.expect(P.rows() >= n && (E.adjoint() * P.leftCols(n) - T).norm() <= t, "P e_i does not reproduce T g_i");
    const bool strict = d.at("strict_contraction").get<bool>();
    c.expect(P.rows() == (strict ? 2 * n : 2 * n - 1), "ambient dimension");
  }
}

void verify_toeplitz(Checker& c, const Options& o, const Json& input, const Json& r) {
  const GridFunction g = grid_from_json(input);
  const double eps = num(r, "epsilon");
  for (const auto& e : r.at("per_K")) {
    const int K = e.at("K").get<int>();
    c.near(e.at("tt3_residual").get<double>(), tt3_identity_check(g, K), "tt3 residual", 1.0);
    const UniformCriterion pc = uniform_paving_criterion(g, K, eps);
    const UniformCriterion fc = uniform_feichtinger_criterion(g, K, eps);
    c.near(e.at("paving").at("value").get<double>(), pc.value, "paving deviation");
    c.near(e.at("feichtinger").at("value").get<double>(), fc.value, "feichtinger minimum");
    c.expect(e.at("paving").at("holds").get<bool>() == pc.holds, "paving criterion flag");
    c.expect(e.at("feichtinger").at("holds").get<bool>() == fc.holds, "feichtinger criterion flag");
  }
  if (!r["distribution"].is_null()) {
    std::vector<int> freqs;
    for (int n = -o.max_freq.value_or(0); n <= o.max_freq.value_or(0); ++n) freqs.push_back(n);
    const DistributionReport d =
        distribution_check(g, arithmetic_progression_partition(freqs, static_cast<int>(num(r, "stride"))), eps);
    c.expect(r["distribution"].at("verdict").get<bool>() == d.verdict, "distribution verdict");
    c.near(r["distribution"].at("worst_relative_deviation").get<double>(), d.worst_relative_deviation,
           "worst relative deviation");
  }
}

}  // namespace

VerifyOutcome verify_report(const Json& report) {
  VerifyOutcome out;
  try {
    if (!report.is_object() || report.value("kslab_report", 0) != 1) throw ContractViolation("not a kslab report");
    if (!report.contains("command") || !report["command"].is_string()) throw ContractViolation("report has no command");
    const std::string command = report["command"].get<std::string>();
    const Options o = cli::options_from_config(command, report.value("config", Json(nullptr)));
    if (!report.contains("result")) throw ContractViolation("report has no result");
    const Json& r = report["result"];
    const Json input = report.value("input", Json(nullptr));
    const bool needs_input = command != "kadec" && command != "mv-theta";
    if (needs_input && input.is_null()) throw ContractViolation("report has no embedded input");

    Checker c;
    c.tol = std::max(o.tol, 1e-9);
    if (command == "pave") {
      verify_pave(c, o, input, r);
    } else if (command == "weaver") {
      verify_weaver(c, o, input, r);
    } else if (command == "decompose") {
      verify_decompose(c, o, input, r);
    } else if (command == "radohorn") {
      verify_radohorn(c, o, input, r);
    } else if (command == "erasure") {
      verify_erasure(c, o, input, r);
    } else if (command == "dilate") {
      verify_dilate(c, input, r);
    } else if (command == "toeplitz") {
      verify_toeplitz(c, o, input, r);
    } else {
      // The remaining commands are cheap: recompute and compare the result.
      Options again = o;
      Json in = input;
      const Json fresh = cli::execute(again, in);
      c.expect(fresh == r, "recomputed result differs from the report");
      if (!input.is_null()) c.expect(in == input, "embedded input changed on recomputation");
    }
    out.reasons = std::move(c.reasons);
    out.ok = out.reasons.empty();
  } catch (const std::exception& e) {
    out.ok = false;
    out.reasons.push_back(e.what());
  }
  return out;
}

}  // namespace kslab

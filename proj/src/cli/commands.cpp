#include <cmath>
#include <numbers>

#include "options.hpp"

namespace kslab::cli {

namespace {

const Json& require_input(const Json& input, const Options& o) {
  if (input.is_null()) throw ContractViolation(o.command + ": --input is required");
  return input;
}

Frame input_frame(const Json& input, const Options& o) { return frame_from_json(require_input(input, o)); }

Matrix input_matrix(const Json& input, const Options& o) { return matrix_from_json(require_input(input, o)); }

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.threads = o.threads;
  s.seed = o.seed;
  if (o.budget) s.partition_budget = *o.budget;
  return s;
}

double need(const std::optional<double>& v, const char* flag, const Options& o) {
  if (!v) throw ContractViolation(o.command + ": " + flag + " is required");
  return *v;
}

int need(const std::optional<int>& v, const char* flag, const Options& o) {
  if (!v) throw ContractViolation(o.command + ": " + flag + " is required");
  return *v;
}

Json run_pave(const Options& o, const Json& input) {
  const Matrix T = input_matrix(input, o);
  const int r = o.r_max.value_or(2);
  const double eps = o.epsilon.value_or(0.5);
  const SearchOptions s = search_options(o);
  const Tolerances tol = tolerances(o);
  if (o.mode == "projection") return to_json(pave_projection_check(T, r, eps, o.delta.value_or(1.0), s, tol));
  if (o.mode == "exhaustive" || (o.mode.empty() && exhaustive_fits(T.rows(), r, s))) {
    return to_json(pave_exhaustive(T, r, eps, s, tol));
  }
  if (o.mode.empty() || o.mode == "local") return to_json(pave_local(T, r, eps, s, tol));
  throw ContractViolation("pave: unknown --mode " + o.mode + " (exhaustive, local or projection)");
}

Json run_decompose(const Options& o, const Json& input) {
  const Frame fr = input_frame(input, o);
  const Tolerances tol = tolerances(o);
  if (o.mode.empty() || o.mode == "riesz") {
    return to_json(epsilon_riesz_partition(fr, o.epsilon.value_or(0.1), o.r_max.value_or(4), tol));
  }
  if (o.mode == "feichtinger") {
    return to_json(feichtinger_partition(fr, need(o.bound, "--bound", o), o.r_max.value_or(4), tol));
  }
  if (o.mode == "tp1") {
    const std::optional<double> B = o.B ? o.B : std::nullopt;
    return to_json(tp1_partition(fr, need(o.S, "--S", o), need(o.delta, "--delta", o), B, o.r_max.value_or(64),
                                 o.seed, tol));
  }
  throw ContractViolation("decompose: unknown --mode " + o.mode);
}

Json run_radohorn(const Options& o, const Json& input) {
  const Frame fr = input_frame(input, o);
  const int r = o.r_max ? *o.r_max : need(o.K, "--r-max", o);
  const Tolerances tol = tolerances(o);
  Json j;
  j["r"] = r;
  j["check"] = fr.size() <= 20 ? to_json(rado_horn_check(fr, r, tol)) : Json(nullptr);
  try {
    j["partition"] = to_json(rado_horn_partition(fr, r, tol));
    j["violator"] = nullptr;
  } catch (const RadoHornInfeasible& e) {
    j["partition"] = nullptr;
    j["violator"] = e.violator();
  }
  return j;
}

Json run_subspace(const Options& o, const Json& input) {
  const Tolerances tol = tolerances(o);
  const Subspace H = Subspace::from_spanning(input_matrix(input, o), tol);
  Json j;
  j["ambient"] = H.ambient;
  j["dim"] = H.dim();
  const LargeCheck lc = is_large(H, o.bound.value_or(0.0));
  j["large"] = {{"A", o.bound.value_or(0.0)}, {"large", lc.large}, {"min_norm", lc.min_norm},
                {"column_norms", lc.column_norms}};
  if (o.blocks.empty()) {
    j["decomposition"] = nullptr;
    return j;
  }
  const Partition p = Partition::from_blocks(static_cast<std::size_t>(H.ambient), parse_blocks(o.blocks));
  const DecomposableCheck dc = is_r_decomposable(H, p, tol);
  Json d;
  d["partition"] = to_json(p);
  d["decomposable"] = dc.decomposable;
  d["failing_block"] = dc.failing_block ? Json(*dc.failing_block) : Json(nullptr);
  d["block_ranks"] = dc.block_ranks;
  if (dc.decomposable) {
    const DecompositionVectors dv = decomposition_vectors(H, p, tol);
    Json vecs = Json::array();
    for (const auto& F : dv.vectors) vecs.push_back(matrix_to_json(F, Field::complex));
    d["vectors"] = std::move(vecs);
    d["g_bessel_bounds"] = dv.g_bessel_bounds;
  }
  j["decomposition"] = std::move(d);
  return j;
}

Json run_toeplitz(const Options& o, Json& input) {
  if (input.is_null()) {
    const int levels = need(o.levels, "--levels (or --input)", o);
    const E1Set e = example_e1_set(need(o.grid, "--grid", o), levels);
    input = grid_to_json(o.mode == "symbol" ? e.symbol : e.set_indicator);
    input["label"] = o.mode == "symbol" ? "e1-complement" : "e1-set";
  }
  const GridFunction g = grid_from_json(input);
  const double eps = o.epsilon.value_or(0.1);
  std::vector<int> Ks = parse_int_list(o.k_list, "--k-list");
  if (Ks.empty() && o.K) Ks.push_back(*o.K);
  Json j;
  j["N"] = g.N();
  j["norm_sq"] = g.norm_sq();
  j["epsilon"] = eps;
  Json per = Json::array();
  for (int K : Ks) {
    Json e;
    e["K"] = K;
    e["tt3_residual"] = tt3_identity_check(g, K);
    e["paving"] = to_json(uniform_paving_criterion(g, K, eps));
    e["feichtinger"] = to_json(uniform_feichtinger_criterion(g, K, eps));
    per.push_back(std::move(e));
  }
  j["per_K"] = std::move(per);
  if (o.max_freq) {
    std::vector<int> freqs;
    for (int n = -*o.max_freq; n <= *o.max_freq; ++n) freqs.push_back(n);
    const int stride = o.stride ? *o.stride : separated_stride(eps, g.support_measure());
    const auto blocks = arithmetic_progression_partition(freqs, stride);
    j["stride"] = stride;
    j["distribution"] = to_json(distribution_check(g, blocks, eps));
  } else {
    j["distribution"] = nullptr;
  }
  j["notes"] = Json::array({"grid semantics"});
  return j;
}

Json run_kadec(const Options& o, Json& input) {
  const double A = o.A.value_or(1.0);
  const double B = o.B.value_or(1.0);
  const double delta = o.delta.value_or(0.0);
  Json j;
  j["kadec"] = to_json(kadec_bounds(A, B, o.gamma.value_or(std::numbers::pi), delta));
  j["christensen"] = (o.lambda || o.mu) ? to_json(christensen_bounds(A, B, o.lambda.value_or(0.0), o.mu.value_or(0.0)))
                                         : Json(nullptr);
  if (input.is_null() && o.grid) {
    Rng rng(o.seed);
    std::vector<double> d(static_cast<std::size_t>(2 * *o.grid + 1));
    for (auto& x : d) x = rng.uniform(-delta, delta);
    input = {{"type", "perturbations"}, {"values", d}};
  }
  if (!input.is_null()) {
    if (!input.contains("values") || !input["values"].is_array()) throw ContractViolation("malformed input at /values");
    j["empirical"] = to_json(kadec_empirical_check(input["values"].get<std::vector<double>>()));
  } else {
    j["empirical"] = nullptr;
  }
  return j;
}

Json run_mv(const Options& o, Json& input) {
  if (input.is_null()) {
    Rng rng(o.seed);
    const int m = o.count.value_or(5);
    const double sep = o.delta.value_or(1.0);
    std::vector<double> freqs;
    Json coeffs = Json::array();
    double lam = rng.uniform(-2.0, 2.0);
    for (int k = 0; k < m; ++k) {
      freqs.push_back(lam);
      lam += sep * (1.0 + rng.uniform());
      const Scalar a = rng.normal_scalar(Field::complex);
      coeffs.push_back(Json::array({a.real(), a.imag()}));
    }
    input = {{"type", "exponential_sum"}, {"freqs", freqs}, {"coeffs", coeffs}, {"T", o.T.value_or(1.0)}};
  }
  if (!input.contains("freqs") || !input.contains("coeffs") || !input.contains("T")) {
    throw ContractViolation("malformed input: need freqs, coeffs and T");
  }
  std::vector<Scalar> coeffs;
  for (const auto& c : input["coeffs"]) coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  const std::optional<double> delta = input.contains("delta") ? std::optional<double>(input["delta"].get<double>())
                                                                : std::nullopt;
  return to_json(montgomery_vaughan_theta(input["freqs"].get<std::vector<double>>(), coeffs, input["T"].get<double>(),
                                          o.grid.value_or(0), delta));
}

Json run_erasure(const Options& o, const Json& input) {
  const Frame fr = input_frame(input, o);
  const Tolerances tol = tolerances(o);
  if (o.mode.empty() || o.mode == "robustness") {
    return to_json(erasure_robustness(fr, o.K.value_or(1), o.count.value_or(0), o.budget.value_or(1'000'000), tol));
  }
  if (o.mode == "cc") return to_json(cc_partition_search(fr, o.epsilon.value_or(0.1), 22, tol));
  if (o.mode == "ccc") {
    return to_json(ccc_partition_search(fr, o.r_max.value_or(2), o.epsilon.value_or(0.1), search_options(o), tol));
  }
  throw ContractViolation("erasure: unknown --mode " + o.mode);
}

}  // namespace

Json execute(const Options& o, Json& input) {
  const Tolerances tol = tolerances(o);
  const std::string& c = o.command;
  if (c == "analyze") return to_json(spectral_summary(input_frame(input, o), tol));
  if (c == "dilate") {
    Json j;
    if (require_input(input, o).value("type", "frame") == "matrix") {
      j["kind"] = "operator";
      j["dilation"] = to_json(dilate_operator(input_matrix(input, o), tol, DilateOptions{o.normalize}));
    } else {
      j["kind"] = "naimark";
      j["dilation"] = to_json(naimark_dilate(input_frame(input, o), tol));
    }
    return j;
  }
  if (c == "pave") return run_pave(o, input);
  if (c == "weaver") {
    const Frame fr = input_frame(input, o);
    const double B = o.bound ? *o.bound : spectral_summary(fr, tol).bessel_bound;
    return to_json(weaver_check(fr, B, o.epsilon.value_or(0.1), o.r_max.value_or(2), search_options(o), tol));
  }
  if (c == "decompose") return run_decompose(o, input);
  if (c == "ric") {
    const Frame fr = input_frame(input, o);
    const int S = need(o.S, "--S", o);
    if (o.samples) return to_json(restricted_isometry_sampled(fr, S, *o.samples, o.seed));
    return to_json(restricted_isometry(fr, S, o.budget.value_or(1'000'000)));
  }
  if (c == "radohorn") return run_radohorn(o, input);
  if (c == "subspace") return run_subspace(o, input);
  if (c == "toeplitz") return run_toeplitz(o, input);
  if (c == "kadec") return run_kadec(o, input);
  if (c == "mv-theta") return run_mv(o, input);
  if (c == "erasure") return run_erasure(o, input);
  if (c == "phase") return to_json(phase_retrieval_check(input_frame(input, o), o.seed, o.trials, 22, tol));
  throw ContractViolation("unknown command " + c);
}

}  // namespace kslab::cli

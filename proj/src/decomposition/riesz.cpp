#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "kslab/decomposition.hpp"
#include "kslab/frames.hpp"
#include "kslab/paving.hpp"

namespace kslab {

RieszCertificate riesz_bounds(const Frame& fr, const IndexSet& idx) {
  if (idx.empty()) throw ContractViolation("riesz_bounds: empty block");
  RieszCertificate c;
  c.block = idx;
  const RealVector sv = singular_values(select_columns(fr.synthesis, idx));
  c.upper = sv(0) * sv(0);
  // more columns than dimensions: the Gram matrix is singular
  c.lower = static_cast<Index>(idx.size()) > sv.size() ? 0.0 : sv(sv.size() - 1) * sv(sv.size() - 1);
  c.epsilon_achieved = std::max(std::abs(c.lower - 1.0), std::abs(c.upper - 1.0));
  return c;
}

namespace {

using BlockTest = std::function<bool(const RieszCertificate&)>;

struct HereditarySearch {
  const Frame& fr;
  BlockTest ok;
  int r_limit = 0;
  bool greedy = false;
  std::uint64_t nodes = 0;
  int frontier = 0;
  std::vector<IndexSet> blocks;

  // Blocks satisfying a hereditary predicate: pruning on the partial block is exact.
  bool place(int i) {
    const auto M = static_cast<int>(fr.size());
    if (i == M) return true;
    ++nodes;
    frontier = std::max(frontier, i);

    struct Option {
      std::size_t block;
      double score;
    };
    std::vector<Option> options;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      IndexSet trial = blocks[b];
      trial.push_back(i);
      const RieszCertificate c = riesz_bounds(fr, trial);
      if (ok(c)) options.push_back({b, c.epsilon_achieved});
    }
    if (greedy) {
      std::stable_sort(options.begin(), options.end(),
                       [](const Option& x, const Option& y) { return x.score < y.score; });
    }
    if (static_cast<int>(blocks.size()) < r_limit) {
      const RieszCertificate c = riesz_bounds(fr, IndexSet{i});
      if (ok(c)) options.push_back({blocks.size(), c.epsilon_achieved});
    }
    for (const Option& o : options) {
      if (o.block == blocks.size()) blocks.emplace_back();
      blocks[o.block].push_back(i);
      if (place(i + 1)) return true;
      blocks[o.block].pop_back();
      if (blocks[o.block].empty()) blocks.pop_back();
      if (greedy && frontier - i > 3) return false;  // limited backtracking depth
    }
    return false;
  }
};

DecompositionReport run_search(const Frame& fr, const std::string& kind, double parameter, int r_max,
                               const BlockTest& ok, int exhaustive_limit) {
  if (r_max < 1) throw ContractViolation(kind + ": r_max must be >= 1");
  DecompositionReport rep;
  rep.kind = kind;
  rep.parameter = parameter;
  rep.r_max = r_max;
  const auto M = static_cast<int>(fr.size());
  rep.exhaustive = M <= exhaustive_limit;

  if (rep.exhaustive) {
    for (int r = 1; r <= r_max && !rep.verdict; ++r) {
      HereditarySearch s{fr, ok, r, false, 0, 0, {}};
      const bool found = s.place(0);
      rep.nodes += s.nodes;
      if (found) {
        rep.verdict = true;
        rep.partition = Partition::from_blocks(fr.size(), s.blocks);
      }
    }
  } else {
    HereditarySearch s{fr, ok, r_max, true, 0, 0, {}};
    const bool found = s.place(0);
    rep.nodes = s.nodes;
    if (found) {
      rep.verdict = true;
      rep.partition = Partition::from_blocks(fr.size(), s.blocks);
    }
    rep.notes.push_back("greedy search with backtracking depth 3: r is not guaranteed minimal");
  }
  if (rep.partition) {
    rep.r_found = rep.partition->blocks();
    for (const auto& block : rep.partition->members()) rep.certificates.push_back(riesz_bounds(fr, block));
  }
  return rep;
}

}  // namespace

DecompositionReport epsilon_riesz_partition(const Frame& fr, double epsilon, int r_max, const Tolerances& tol,
                                            int exhaustive_limit) {
  for (Index i = 0; i < fr.size(); ++i) {
    if (std::abs(fr.synthesis.col(i).norm() - 1.0) > tol.check_tol) {
      throw ContractViolation("epsilon_riesz_partition: frame vectors must be unit norm");
    }
  }
  const double slack = tol.check_tol;
  auto ok = [=](const RieszCertificate& c) {
    return c.lower >= 1.0 - epsilon - slack && c.upper <= 1.0 + epsilon + slack;
  };
  return run_search(fr, "epsilon_riesz", epsilon, r_max, ok, exhaustive_limit);
}

DecompositionReport feichtinger_partition(const Frame& fr, double a_target, int r_max, const Tolerances& tol,
                                          int exhaustive_limit) {
  double c = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < fr.size(); ++i) c = std::min(c, fr.synthesis.col(i).norm());
  if (!(c > 0.0)) throw ContractViolation("feichtinger_partition: vectors must be bounded below (found a zero vector)");
  const double slack = tol.check_tol;
  auto ok = [=](const RieszCertificate& cert) { return cert.lower >= a_target - slack; };
  DecompositionReport rep = run_search(fr, "feichtinger", a_target, r_max, ok, exhaustive_limit);
  rep.notes.push_back("min ||f_i|| = " + std::to_string(c));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {
double support_delta(const Matrix& gram, const IndexSet& s) {
  if (s.size() == 1) return std::abs(gram(s[0], s[0]).real() - 1.0);
  const RealVector ev = sym_eigenvalues(principal_submatrix(gram, s));
  return std::max(1.0 - ev(0), ev(ev.size() - 1) - 1.0);
}
}  // namespace

RicResult restricted_isometry(const Frame& fr, int S, std::uint64_t budget) {
  const auto M = static_cast<int>(fr.size());
  if (S < 1 || S > M) throw ContractViolation("restricted_isometry: need 1 <= S <= M");
  std::uint64_t total = 0;
  for (int s = 1; s <= S; ++s) total += binomial(M, s);
  if (total > budget) {
    throw BudgetExceeded("restricted_isometry: " + std::to_string(total) +
                         " supports exceed the budget; use the sampled lower-bound mode");
  }
  const Matrix gram = gram_matrix(fr);
  RicResult out;
  out.S = S;
  out.delta = -std::numeric_limits<double>::infinity();
  for (int s = 1; s <= S; ++s) {
    for_each_subset(M, s, [&](const IndexSet& sub) {
      ++out.subsets;
      const double d = support_delta(gram, sub);
      if (d > out.delta) {
        out.delta = d;
        out.witness = sub;
      }
      return true;
    });
  }
  out.delta = std::max(out.delta, 0.0);
  return out;
}

RicResult restricted_isometry_sampled(const Frame& fr, int S, std::uint64_t samples, std::uint64_t seed) {
  const auto M = static_cast<int>(fr.size());
  if (S < 1 || S > M) throw ContractViolation("restricted_isometry: need 1 <= S <= M");
  const Matrix gram = gram_matrix(fr);
  Rng rng(seed);
  RicResult out;
  out.S = S;
  out.exact = false;
  std::vector<int> perm(static_cast<std::size_t>(M));
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (int i = 0; i < M; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < S; ++i) {  // partial Fisher-Yates
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(M - i)));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    IndexSet sub(perm.begin(), perm.begin() + S);
    std::sort(sub.begin(), sub.end());
    ++out.subsets;
    const double d = support_delta(gram, sub);
    if (d > out.delta || out.witness.empty()) {
      out.delta = std::max(d, 0.0);
      out.witness = sub;
    }
  }
  return out;
}

Tp1Report tp1_partition(const Frame& fr, int S, double delta, std::optional<double> B, int r_max, std::uint64_t seed,
                        const Tolerances& tol) {
  if (!(delta > 0.0)) throw ContractViolation("tp1_partition: delta must be positive");
  if (S < 1 || S > fr.size()) throw ContractViolation("tp1_partition: need 1 <= S <= M");
  for (Index i = 0; i < fr.size(); ++i) {
    if (std::abs(fr.synthesis.col(i).norm() - 1.0) > tol.check_tol) {
      throw ContractViolation("tp1_partition: frame vectors must be unit norm");
    }
  }
  const double bessel = spectral_summary(fr, tol).bessel_bound;
  if (B && bessel > *B + tol.check_tol) {
    throw ContractViolation("tp1_partition: Bessel bound " + std::to_string(bessel) + " exceeds B");
  }
  Tp1Report rep;
  rep.S = S;
  rep.delta = delta;
  rep.seed = seed;
  rep.bessel_bound = B.value_or(bessel);
  rep.k = std::max(1, static_cast<int>(std::ceil(rep.bessel_bound * S / (delta * delta))));
  // ceil can land one below because of rounding in B S / delta^2
  while (std::sqrt(rep.bessel_bound * S / rep.k) > delta) ++rep.k;
  rep.mass_threshold = rep.bessel_bound / rep.k;

  const Matrix G = gram_matrix(fr);
  Matrix H(G.rows(), G.cols());
  for (Index j = 0; j < G.cols(); ++j)
    for (Index i = 0; i < G.rows(); ++i) H(i, j) = i == j ? 0.0 : std::norm(G(i, j));

  std::vector<int> schedule;
  for (int r = 1; r < r_max; r *= 2) schedule.push_back(r);
  schedule.push_back(std::max(1, r_max));

  for (std::size_t step = 0; step < schedule.size(); ++step) {
    const int r = schedule[step];
    rep.r_tried.push_back(r);
    const WkhbResult w = wkhb_partition(H, r, seed, tol);
    bool mass_ok = true;
    for (std::size_t i = 0; i < w.masses.size(); ++i)
      if (w.masses[i][static_cast<std::size_t>(w.partition.block_of(i))] > rep.mass_threshold) mass_ok = false;
    const bool last = step + 1 == schedule.size();
    if (!mass_ok && !last) continue;

    rep.r_used = r;
    rep.partition = w.partition.canonical();
    rep.mass_condition = mass_ok;
    rep.block_delta.clear();
    rep.counterexample_block.reset();
    rep.verified = true;
    for (const auto& block : rep.partition.members()) {
      const Frame sub = subframe(fr, block);
      const int s = std::min<int>(S, static_cast<int>(block.size()));
      const double d = restricted_isometry(sub, s).delta;
      rep.block_delta.push_back(d);
      if (d > delta && rep.verified) {
        rep.verified = false;
        rep.counterexample_block = block;
      }
    }
    if (rep.verified) break;
  }
  return rep;
}

// ---------------------------------------------------------------------------

double mixed_norm(const Vector& x) {
  if (x.size() == 0) return 0.0;
  return x.norm() + x.cwiseAbs().maxCoeff();
}

Vector mixed_norm_counterexample(int n) {
  if (n < 1) throw ContractViolation("mixed_norm_counterexample: n must be >= 1");
  const double scale = 1.0 / (std::numbers::sqrt2 + 1.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  Vector x = Vector::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    x(2 * i) += a * scale;
    x(2 * i + 1) += a * scale;
  }
  return x;
}

double mixed_norm_counterexample_value(int n) {
  return (std::numbers::sqrt2 + 1.0 / std::sqrt(static_cast<double>(n))) / (std::numbers::sqrt2 + 1.0);
}

}  // namespace kslab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/frame.hpp"

namespace kslab {

struct RieszCertificate {
  IndexSet block;
  double lower = 0.0;  // sigma_min^2 of the block synthesis matrix (0 on dependence)
  double upper = 0.0;  // sigma_max^2
  double epsilon_achieved = 0.0;  // max(|lower - 1|, |upper - 1|)
};

RieszCertificate riesz_bounds(const Frame& fr, const IndexSet& idx);

struct DecompositionReport {
  std::string kind;  // "epsilon_riesz" or "feichtinger"
  double parameter = 0.0;  // epsilon, or the target lower bound
  int r_max = 0;
  bool verdict = false;
  std::optional<Partition> partition;
  int r_found = 0;
  std::vector<RieszCertificate> certificates;
  bool exhaustive = false;
  std::uint64_t nodes = 0;  // search nodes visited
  std::vector<std::string> notes;
};

/// Partition into blocks with Riesz bounds in [1 - epsilon, 1 + epsilon].
/// Exhaustive (returns the minimal r) for M <= exhaustive_limit, otherwise
/// greedy with backtracking depth 3.
DecompositionReport epsilon_riesz_partition(const Frame& fr, double epsilon, int r_max, const Tolerances& tol = {},
                                            int exhaustive_limit = 12);

/// Partition into blocks whose lower Riesz bound is at least a_target.
DecompositionReport feichtinger_partition(const Frame& fr, double a_target, int r_max, const Tolerances& tol = {},
                                          int exhaustive_limit = 12);

struct RicResult {
  int S = 0;
  double delta = 0.0;
  IndexSet witness;
  std::uint64_t subsets = 0;
  bool exact = true;  // false: sampled lower bound only
};

/// delta_S by enumeration of every support of size 1..S. Throws
/// BudgetExceeded when sum_s C(M, s) > budget.
RicResult restricted_isometry(const Frame& fr, int S, std::uint64_t budget = 1'000'000);

/// Lower bound on delta_S from `samples` random supports of size S.
RicResult restricted_isometry_sampled(const Frame& fr, int S, std::uint64_t samples, std::uint64_t seed);

struct Tp1Report {
  int S = 0;
  double delta = 0.0;
  double bessel_bound = 0.0;  // B used
  int k = 0;                  // smallest k with sqrt(B S / k) <= delta
  double mass_threshold = 0.0;  // B / k
  std::vector<int> r_tried;
  int r_used = 0;
  Partition partition;  // nonempty blocks only
  bool mass_condition = false;
  bool verified = false;
  std::vector<double> block_delta;  // restricted_isometry per block
  std::optional<IndexSet> counterexample_block;
  std::uint64_t seed = 0;
};

/// Partition of a unit-norm Bessel family into blocks with delta_S <= delta,
/// via the row-mass partition of |<f_i, f_m>|^2 and brute-force verification.
Tp1Report tp1_partition(const Frame& fr, int S, double delta, std::optional<double> B = std::nullopt, int r_max = 64,
                        std::uint64_t seed = 0, const Tolerances& tol = {});

struct RadoHornCheck {
  bool holds = true;
  std::optional<IndexSet> violator;
  std::uint64_t subsets = 0;
};

/// |J| <= r * rank(J) for every nonempty J; subsets scanned by size, so the
/// reported violator is a smallest one.
RadoHornCheck rado_horn_check(const Frame& fr, int r, const Tolerances& tol = {}, int max_size = 20);

class RadoHornInfeasible : public ContractViolation {
 public:
  RadoHornInfeasible(const std::string& what, IndexSet violator)
      : ContractViolation(what), violator_(std::move(violator)) {}
  const IndexSet& violator() const { return violator_; }

 private:
  IndexSet violator_;
};

/// Partition into at most r linearly independent blocks by augmenting
/// exchange paths. Throws RadoHornInfeasible carrying a violating subset.
Partition rado_horn_partition(const Frame& fr, int r, const Tolerances& tol = {});

/// A subspace of C^M given by an orthonormal basis.
struct Subspace {
  Index ambient = 0;
  Matrix basis;      // M x n, orthonormal columns
  Matrix projector;  // basis * basis^*

  /// Orthonormalizes the columns of `vectors` (rank-revealing).
  static Subspace from_spanning(const Matrix& vectors, const Tolerances& tol = {});
  Index dim() const { return basis.cols(); }
};

struct LargeCheck {
  bool large = false;
  double min_norm = 0.0;  // min_i ||P e_i||
  std::vector<double> column_norms;
};

LargeCheck is_large(const Subspace& H, double A);

struct DecomposableCheck {
  bool decomposable = true;
  std::optional<int> failing_block;
  std::vector<std::size_t> block_ranks;
};

DecomposableCheck is_r_decomposable(const Subspace& H, const Partition& p, const Tolerances& tol = {});

struct DecompositionVectors {
  std::vector<IndexSet> blocks;
  std::vector<Matrix> vectors;  // vectors[j].col(k) = f_{j, blocks[j][k]}
  std::vector<double> g_bessel_bounds;  // Bessel bound of {f_ji - e_i}_i per block
};

/// For each block E_j and i in E_j the vector f_ji in H with f_ji(i) = 1 and
/// f_ji(l) = 0 for l in E_j \ {i}, taken in span{P e_l : l in E_j}.
DecompositionVectors decomposition_vectors(const Subspace& H, const Partition& p, const Tolerances& tol = {});

/// ||x||_2 + sup_i |x_i|.
double mixed_norm(const Vector& x);

/// x = sum_{i<n} n^{-1/2} f_i with f_i = (e_{2i} + e_{2i+1}) / (sqrt 2 + 1), in C^{2n}.
Vector mixed_norm_counterexample(int n);

/// (sqrt 2 + 1/sqrt n) / (sqrt 2 + 1).
double mixed_norm_counterexample_value(int n);

}  // namespace kslab

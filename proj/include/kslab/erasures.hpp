#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/frame.hpp"
#include "kslab/paving.hpp"

namespace kslab {

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;  // equal-width bins over [lo, hi]
};

struct ErasureReport {
  int k = 0;
  IndexSet worst_subset;
  double worst_lower_bound = 0.0;  // min over |J| = k of lambda_min(S_{J^c})
  std::uint64_t subsets = 0;
  bool parseval = false;
  // Parseval input only: max |lambda_min(S_{J^c}) - (1 - lambda_max(S_J))|
  std::optional<double> complement_residual;
  bool complement_holds = true;
  std::optional<Histogram> distribution;
  std::vector<std::string> notes;
};

/// Exhaustive scan of all k-subsets J of erased indices. Non-Parseval input is
/// flagged in the notes and computed anyway. Throws BudgetExceeded when
/// C(M, k) > budget.
ErasureReport erasure_robustness(const Frame& fr, int k, int histogram_bins = 0, std::uint64_t budget = 1'000'000,
                                 const Tolerances& tol = {});

struct BipartitionReport {
  double epsilon = 0.0;
  double best = 0.0;  // max over (J, J^c) of min(lambda_min(S_J), lambda_min(S_{J^c}))
  IndexSet witness;   // J (contains index 0)
  bool verdict = false;  // best >= epsilon
  std::uint64_t evaluated = 0;
  bool parseval = false;
  std::vector<std::string> notes;
};

/// Exhaustive over the 2^(M-1) bipartitions, M <= max_size.
BipartitionReport cc_partition_search(const Frame& fr, double epsilon, int max_size = 22, const Tolerances& tol = {});

struct CccReport {
  double epsilon = 0.0;
  int r_max = 0;
  Partition partition;
  std::vector<double> block_bounds;  // lambda_max(S_block)
  double achieved = 0.0;             // max of block_bounds
  bool verdict = false;              // achieved <= 1 - epsilon
  double cross_residual = 0.0;       // max | lambda_max(S_block) - ||Q G Q|| |
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
  std::optional<std::uint64_t> seed;
  bool parseval = false;
  std::vector<std::string> notes;
};

/// Minimizes the largest block Bessel bound over partitions into at most r_max
/// blocks, via principal blocks of the Gram matrix (exhaustive within budget).
CccReport ccc_partition_search(const Frame& fr, int r_max, double epsilon, const SearchOptions& opt = {},
                               const Tolerances& tol = {});

struct PhaseReport {
  bool injective = false;
  std::optional<std::pair<IndexSet, IndexSet>> violation;  // (S, S^c), neither side spans
  std::uint64_t bipartitions = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool cross_validation_ok = true;
  std::optional<std::string> counterexample;
  std::vector<std::string> notes;
};

/// Complement property for a real frame: every bipartition has a spanning side.
/// A true verdict is cross-validated with random equal-modulus pairs.
PhaseReport phase_retrieval_check(const Frame& fr, std::uint64_t seed = 0, std::uint64_t trials = 10'000,
                                  int max_size = 22, const Tolerances& tol = {});

}  // namespace kslab

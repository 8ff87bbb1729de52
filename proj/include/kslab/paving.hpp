#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/frame.hpp"

namespace kslab {

/// Which matrix the block norms are taken of.
enum class PavingForm {
  off_diagonal,  // T - D(T): the paving form
  projection,    // full projection P, diagonal included
  frame_blocks,  // Gram matrix of a frame: block norm = Bessel bound of the block
};

std::string to_string(PavingForm f);

struct SearchOptions {
  int size_budget = 14;                      // exhaustive only for matrices up to this size
  std::uint64_t partition_budget = 10'000'000;  // and at most this many partitions
  int threads = 1;
  std::uint64_t seed = 0;  // local search
  int sweeps = 200;
  int restarts = 8;
};

struct PavingReport {
  PavingForm form = PavingForm::off_diagonal;
  Partition partition;
  double achieved = 0.0;            // max of blocks_detail
  std::vector<double> blocks_detail;
  double epsilon = 0.0;
  double reference_norm = 0.0;      // ||T - D(T)|| (off_diagonal form)
  double bound = 0.0;               // threshold the verdict compares against
  bool verdict = false;
  bool exhaustive = false;
  std::uint64_t evaluated = 0;      // partitions (or accepted moves) examined
  std::optional<std::uint64_t> seed;
  int sweeps_used = 0;
  bool precondition_ok = true;
  std::vector<std::string> notes;
  std::optional<double> delta_diag;           // projection form: delta(P)
  std::optional<double> identity_residual;    // max | ||Q P Q|| - ||P Q||^2 |
};

/// Diagonal 0/1 matrix selecting A.
Matrix diagonal_projection(int M, std::span<const int> A);

/// max_i |T_ii|.
double delta_diag(const Matrix& T);

/// T - D(T).
Matrix off_diagonal_part(const Matrix& T);

struct BlockNorms {
  double max = 0.0;
  std::vector<double> per_block;
};

/// Operator norms of the principal submatrices of H on each nonempty block.
BlockNorms block_norms(const Matrix& H, const Partition& p);

/// Block norms of T - D(T).
BlockNorms paving_norm(const Matrix& T, const Partition& p);

/// Exhaustive minimum of the max block norm of H over partitions into at most
/// r_max blocks. Ties go to the first partition in restricted-growth order.
struct BlockSearchResult {
  Partition partition;
  BlockNorms norms;
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
  int sweeps_used = 0;
};
BlockSearchResult min_block_norm_exhaustive(const Matrix& H, int r_max, const SearchOptions& opt = {});

/// Steepest-descent single-index moves on (max block norm, in-block Frobenius
/// mass), lowest block id on ties, from `restarts` seeded starting points.
BlockSearchResult min_block_norm_local(const Matrix& H, int r, const SearchOptions& opt = {});

/// True if the exhaustive search fits the budgets in opt.
bool exhaustive_fits(Index M, int r_max, const SearchOptions& opt);

PavingReport pave_exhaustive(const Matrix& T, int r_max, double epsilon, const SearchOptions& opt = {},
                             const Tolerances& tol = {});

PavingReport pave_local(const Matrix& T, int r, double epsilon, const SearchOptions& opt = {},
                        const Tolerances& tol = {});

/// Search for max_j ||Q_Aj P Q_Aj|| <= 1 - epsilon on the full projection P.
/// delta(P) > delta is reported as a violated precondition, not an error.
PavingReport pave_projection_check(const Matrix& P, int r_max, double epsilon, double delta,
                                   const SearchOptions& opt = {}, const Tolerances& tol = {});

/// Search for a partition whose blocks all have Bessel bound <= B - epsilon.
PavingReport weaver_check(const Frame& fr, double B, double epsilon, int r_max, const SearchOptions& opt = {},
                          const Tolerances& tol = {});

struct WkhbResult {
  Partition partition;  // r blocks, empty blocks allowed
  std::vector<std::vector<double>> masses;  // masses[i][j] = sum_{m in A_j} a_im
  std::vector<double> row_totals;
  std::uint64_t moves = 0;
  double initial_potential = 0.0;
  double final_potential = 0.0;
  double smallest_decrement = 0.0;  // smallest positive per-move potential drop
  bool certificate_holds = false;
};

/// Local search to a partition with sum_{m in A_j} a_im <= sum_{m in A_l} a_im
/// for every i in A_j and l != j. A must be nonnegative, symmetric, zero diagonal.
WkhbResult wkhb_partition(const Matrix& A, int r, std::uint64_t seed, const Tolerances& tol = {});

/// Recomputes masses for p and checks the fixed-point inequality exactly and
/// in-block <= row_total / r (4-ulp relative allowance).
bool verify_wkhb_certificate(const Matrix& A, const Partition& p, std::vector<std::vector<double>>* masses = nullptr);

/// sum_{m in block} a_im, summed in ascending m.
double block_mass(const Matrix& A, Index i, const IndexSet& block);

}  // namespace kslab

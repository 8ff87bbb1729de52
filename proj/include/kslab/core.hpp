#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kslab {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using IndexSet = std::vector<int>;

enum class Field { real, complex };

std::string to_string(Field f);
Field field_from_string(const std::string& s);

// A precondition or input-shape violation. The CLI maps this to exit 2.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed its configured budget. The CLI maps this to exit 3.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double eig_tol = 1e-12;   // relative eigenvalue tolerance
  double rank_tol = 1e-10;  // singular-value cutoff factor
  double check_tol = 1e-9;  // default comparison tolerance for predicates

  void validate() const;
};

// ---------------------------------------------------------------------------
// Dense linear algebra

bool is_square(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);
bool all_finite(const Matrix& m);
void require_finite(const Matrix& m, const std::string& what);

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // column k pairs with values(k)
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Throws ContractViolation for non-square or non-Hermitian input
/// (Hermitian within tol.check_tol relative to max(1, ||m||_F)).
EigenDecomposition sym_eig(const Matrix& m, const Tolerances& tol = {});

/// Eigenvalues only, ascending.
RealVector sym_eigenvalues(const Matrix& m, const Tolerances& tol = {});

/// Singular values, descending.
RealVector singular_values(const Matrix& m);

/// Largest singular value. Hermitian input goes through sym_eig.
double operator_norm(const Matrix& m);

/// Number of singular values above rank_tol * sigma_max * max(rows, cols).
std::size_t numeric_rank(const Matrix& m, const Tolerances& tol = {});

/// Columns of m selected by idx, order preserved.
Matrix select_columns(const Matrix& m, std::span<const int> idx);

/// Principal submatrix m[idx, idx].
Matrix principal_submatrix(const Matrix& m, std::span<const int> idx);

/// Orthonormal basis of the column space (numeric rank via tol).
Matrix orthonormal_basis(const Matrix& m, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Partitions

/// A map index -> block id. Block ids are 0..blocks()-1; empty blocks only
/// survive construction when allow_empty is set.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> block_of, int blocks, bool allow_empty = false);
  explicit Partition(const std::vector<int>& block_of);  // blocks = max+1, no empties

  static Partition from_blocks(std::size_t size, const std::vector<IndexSet>& blocks);
  static Partition single_block(std::size_t size);

  std::size_t size() const { return block_of_.size(); }
  int blocks() const { return blocks_; }
  int block_of(std::size_t i) const { return block_of_.at(i); }
  const std::vector<int>& labels() const { return block_of_; }

  /// Members of each block, ascending indices.
  std::vector<IndexSet> members() const;
  /// Members of the nonempty blocks only.
  std::vector<IndexSet> nonempty_members() const;

  /// Relabel so block ids appear in order of first occurrence; drops empty blocks.
  Partition canonical() const;
  bool is_refinement_of(const Partition& coarser) const;

  bool operator==(const Partition& o) const = default;

 private:
  std::vector<int> block_of_;
  int blocks_ = 0;
};

/// Enumerates set partitions of {0..M-1} into at most r blocks as
/// restricted-growth strings, in lexicographic order. Each partition
/// appears exactly once.
class PartitionEnumerator {
 public:
  PartitionEnumerator(int M, int r);

  /// Advances to the next partition; returns false when exhausted.
  /// The first call yields the single-block partition.
  bool next();
  const std::vector<int>& labels() const { return rgs_; }
  int blocks() const { return used_.back(); }
  Partition current() const;

 private:
  int M_;
  int r_;
  bool started_ = false;
  std::vector<int> rgs_;
  std::vector<int> used_;  // used_[i] = 1 + max(rgs_[0..i])
};

std::vector<Partition> enumerate_partitions(int M, int r);

/// Number of partitions of M elements into at most r blocks (sum of Stirling
/// numbers of the second kind), saturating at UINT64_MAX.
std::uint64_t count_partitions(int M, int r);

std::uint64_t binomial(int n, int k);

/// Calls fn(subset) for every k-subset of {0..M-1} in lexicographic order.
/// Returning false from fn stops the scan early.
template <typename Fn>
void for_each_subset(int M, int k, Fn&& fn) {
  if (k < 0 || k > M) return;
  IndexSet s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!fn(static_cast<const IndexSet&>(s))) return;
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == M - k + i) --i;
    if (i < 0) return;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

IndexSet complement(std::size_t M, std::span<const int> idx);

// ---------------------------------------------------------------------------
// Seeded generation

/// Deterministic generator; identical streams on every platform for a seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  // [0,1)
  double uniform(double lo, double hi);
  double normal();
  std::uint64_t below(std::uint64_t n);  // [0,n)
  Scalar normal_scalar(Field f);

 private:
  std::uint64_t state_[4];
  std::optional<double> spare_;
  std::uint64_t next_u64();
};

Matrix gaussian_matrix(Index rows, Index cols, Field f, Rng& rng);

}  // namespace kslab

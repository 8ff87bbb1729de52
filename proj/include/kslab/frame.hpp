#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kslab/core.hpp"

namespace kslab {

/// Ordered family of M vectors in an n-dimensional space, stored as the
/// n x M synthesis matrix (column i is f_i).
struct Frame {
  Matrix synthesis;
  Field field = Field::complex;
  std::string label;
  std::optional<std::uint64_t> seed;  // generator provenance
  std::vector<std::string> notes;

  Frame() = default;
  Frame(Matrix synthesis, Field field, std::string label = {});

  Index dim() const { return synthesis.rows(); }
  Index size() const { return synthesis.cols(); }
  Vector vec(Index i) const { return synthesis.col(i); }
  /// Analysis operator f -> (<f, f_i>)_i as an M x n matrix.
  Matrix analysis() const { return synthesis.adjoint(); }
};

// ---------------------------------------------------------------------------
// Seeded test-object generators. All are pure functions of their arguments.

/// M Gaussian vectors in dimension n, each normalized to unit norm.
/// M < n is allowed; the frame then carries a "does not span" note.
Frame gen_random_unit_frame(int n, int M, std::uint64_t seed, Field field = Field::complex);

/// Harmonic frame f_i(k) = exp(2 pi i i k / M) / sqrt(n).
Frame gen_harmonic_frame(int n, int M);

/// P = V V^* with V an M x n isometry from a seeded Gaussian matrix.
Matrix gen_random_projection(int M, int n, std::uint64_t seed, Field field = Field::complex);

/// n x n unitary (orthogonal when real) from a seeded Gaussian matrix.
Matrix gen_random_unitary(int n, std::uint64_t seed, Field field = Field::complex);

/// K seeded orthonormal bases of dimension n concatenated, each column then
/// perturbed by Gaussian noise of the given scale and renormalized. noise = 0
/// gives a unit-norm tight frame with bound K.
Frame gen_perturbed_union_of_bases(int n, int K, double noise, std::uint64_t seed, Field field = Field::complex);

/// Random Hermitian n x n (Gaussian, symmetrized).
Matrix gen_random_hermitian(int n, std::uint64_t seed, Field field = Field::complex);

}  // namespace kslab

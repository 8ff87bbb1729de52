#pragma once

#include <optional>

#include "kslab/frame.hpp"

namespace kslab {

struct SpectralSummary {
  double lower_frame_bound = 0.0;  // A = lambda_min(S) when the frame spans, else 0
  double upper_frame_bound = 0.0;  // B = lambda_max(S)
  double bessel_bound = 0.0;       // = B
  std::optional<double> riesz_lower;  // sqrt(lambda_min(G)) when columns are independent
  std::optional<double> riesz_upper;
  double trace_S = 0.0;
  std::size_t rank = 0;
  bool spans = false;  // false => "frame for span only"
  bool is_parseval = false;
  bool is_tight = false;
  bool is_equal_norm = false;
  Tolerances tol;
};

/// S = T T^*.
Matrix frame_operator(const Frame& fr);

/// G = T^* T, G(i, j) = <f_j, f_i>.
Matrix gram_matrix(const Frame& fr);

SpectralSummary spectral_summary(const Frame& fr, const Tolerances& tol = {});

/// {S^{-1/2} f_i}. Throws ContractViolation when the frame does not span.
Frame parseval_normalize(const Frame& fr, const Tolerances& tol = {});

/// {S^{-1} f_i}. Throws ContractViolation when the frame does not span.
Frame canonical_dual(const Frame& fr, const Tolerances& tol = {});

/// Reconstruction sum_i <f, g_i> f_i with a given dual family g.
Vector reconstruct(const Frame& fr, const Frame& dual, const Vector& f);

/// {P f_i}. P must be an orthogonal projection within check_tol.
Frame project_frame(const Frame& fr, const Matrix& P, const Tolerances& tol = {});

/// Frame bounds of fr on the subspace with orthonormal basis U (columns), i.e.
/// extreme eigenvalues of U^* S U.
std::pair<double, double> frame_bounds_on(const Frame& fr, const Matrix& U);

/// Equality of the kernels of the synthesis operators, tested as equality of
/// their row spaces by rank.
bool frames_equivalent(const Frame& a, const Frame& b, const Tolerances& tol = {});

Frame subframe(const Frame& fr, std::span<const int> idx);

struct FrameSequenceInfo {
  bool is_frame_sequence = true;  // always true for finite families
  bool degenerate = false;        // all vectors zero: A' undefined
  std::optional<double> lower_on_span;  // smallest nonzero eigenvalue of S
  double upper = 0.0;
  std::size_t rank = 0;
};

FrameSequenceInfo is_frame_sequence(const Frame& fr, const Tolerances& tol = {});

/// Is P an orthogonal projection (P^2 = P = P^*) within tol?
bool is_projection(const Matrix& P, double tol);

}  // namespace kslab

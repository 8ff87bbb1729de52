#include "kslab/frames.hpp"

#include <algorithm>
#include <cmath>

namespace kslab {

Matrix frame_operator(const Frame& fr) {
  Matrix s = fr.synthesis * fr.synthesis.adjoint();
  return 0.5 * (s + s.adjoint());
}

Matrix gram_matrix(const Frame& fr) {
  Matrix g = fr.synthesis.adjoint() * fr.synthesis;
  return 0.5 * (g + g.adjoint());
}

SpectralSummary spectral_summary(const Frame& fr, const Tolerances& tol) {
  tol.validate();
  SpectralSummary out;
  out.tol = tol;
  const RealVector ev = sym_eigenvalues(frame_operator(fr), tol);
  out.rank = numeric_rank(fr.synthesis, tol);
  out.spans = out.rank == static_cast<std::size_t>(fr.dim());
  out.upper_frame_bound = std::max(0.0, ev(ev.size() - 1));
  out.lower_frame_bound = out.spans ? std::max(0.0, ev(0)) : 0.0;
  out.bessel_bound = out.upper_frame_bound;
  out.trace_S = fr.synthesis.squaredNorm();

  if (out.rank == static_cast<std::size_t>(fr.size())) {
    const RealVector gev = sym_eigenvalues(gram_matrix(fr), tol);
    out.riesz_lower = std::sqrt(std::max(0.0, gev(0)));
    out.riesz_upper = std::sqrt(std::max(0.0, gev(gev.size() - 1)));
  }

  const double A = out.lower_frame_bound;
  const double B = out.upper_frame_bound;
  out.is_parseval = std::abs(A - 1.0) <= tol.check_tol && std::abs(B - 1.0) <= tol.check_tol;
  out.is_tight = out.spans && std::abs(B - A) <= tol.check_tol * std::max(1.0, B);

  const double n0 = fr.synthesis.col(0).squaredNorm();
  out.is_equal_norm = true;
  for (Index i = 1; i < fr.size(); ++i) {
    if (std::abs(fr.synthesis.col(i).squaredNorm() - n0) > tol.check_tol * std::max(1.0, n0)) {
      out.is_equal_norm = false;
      break;
    }
  }
  return out;
}

namespace {

// S^{p} for p in {-1/2, -1}, refusing eigenvalues below eig_tol * lambda_max.
Matrix inverse_power_of_frame_operator(const Frame& fr, double power, const Tolerances& tol) {
  const EigenDecomposition ed = sym_eig(frame_operator(fr), tol);
  const double lmax = ed.values(ed.values.size() - 1);
  const double floor = tol.eig_tol * lmax;
  if (!(lmax > 0.0) || ed.values(0) <= floor) {
    throw ContractViolation("not a frame for the space (lambda_min(S) = " + std::to_string(ed.values(0)) + ")");
  }
  RealVector d(ed.values.size());
  for (Index k = 0; k < d.size(); ++k) d(k) = std::pow(ed.values(k), power);
  return ed.vectors * d.cast<Scalar>().asDiagonal() * ed.vectors.adjoint();
}

}  // namespace

Frame parseval_normalize(const Frame& fr, const Tolerances& tol) {
  Frame out = fr;
  out.synthesis = inverse_power_of_frame_operator(fr, -0.5, tol) * fr.synthesis;
  out.label = fr.label.empty() ? "parseval" : fr.label + "/parseval";
  return out;
}

Frame canonical_dual(const Frame& fr, const Tolerances& tol) {
  Frame out = fr;
  out.synthesis = inverse_power_of_frame_operator(fr, -1.0, tol) * fr.synthesis;
  out.label = fr.label.empty() ? "dual" : fr.label + "/dual";
  return out;
}

Vector reconstruct(const Frame& fr, const Frame& dual, const Vector& f) {
  // sum_i <f, g_i> f_i = T (G^* f) where G is the dual synthesis matrix
  return fr.synthesis * (dual.synthesis.adjoint() * f);
}

bool is_projection(const Matrix& P, double tol) {
  if (!is_square(P)) return false;
  const double scale = std::max(1.0, P.norm());
  return (P - P.adjoint()).norm() <= tol * scale && (P * P - P).norm() <= tol * scale;
}

Frame project_frame(const Frame& fr, const Matrix& P, const Tolerances& tol) {
  if (P.rows() != fr.dim() || !is_projection(P, tol.check_tol)) {
    throw ContractViolation("project_frame: P is not an orthogonal projection on the frame's space");
  }
  Frame out = fr;
  out.synthesis = P * fr.synthesis;
  out.label = fr.label.empty() ? "projected" : fr.label + "/projected";
  return out;
}

std::pair<double, double> frame_bounds_on(const Frame& fr, const Matrix& U) {
  if (U.cols() == 0) return {0.0, 0.0};
  Matrix r = U.adjoint() * frame_operator(fr) * U;
  r = 0.5 * (r + r.adjoint());
  const RealVector ev = sym_eigenvalues(r);
  return {ev(0), ev(ev.size() - 1)};
}

bool frames_equivalent(const Frame& a, const Frame& b, const Tolerances& tol) {
  if (a.size() != b.size()) throw ContractViolation("frames_equivalent: frames must have the same number of vectors");
  Matrix stacked(a.dim() + b.dim(), a.size());
  stacked.topRows(a.dim()) = a.synthesis;
  stacked.bottomRows(b.dim()) = b.synthesis;
  const std::size_t ra = numeric_rank(a.synthesis, tol);
  const std::size_t rb = numeric_rank(b.synthesis, tol);
  const std::size_t rab = numeric_rank(stacked, tol);
  return ra == rb && ra == rab;
}

Frame subframe(const Frame& fr, std::span<const int> idx) {
  if (idx.empty()) throw ContractViolation("subframe: empty index set");
  Frame out(select_columns(fr.synthesis, idx), fr.field, fr.label);
  out.seed = fr.seed;
  return out;
}

FrameSequenceInfo is_frame_sequence(const Frame& fr, const Tolerances& tol) {
  FrameSequenceInfo info;
  info.rank = numeric_rank(fr.synthesis, tol);
  if (info.rank == 0) {
    info.degenerate = true;
    return info;
  }
  const RealVector ev = sym_eigenvalues(frame_operator(fr), tol);
  // the top `rank` eigenvalues are the nonzero ones
  info.lower_on_span = ev(ev.size() - static_cast<Index>(info.rank));
  info.upper = ev(ev.size() - 1);
  return info;
}

}  // namespace kslab

#include "kslab/dilation.hpp"

#include <algorithm>
#include <cmath>

#include "kslab/frames.hpp"

namespace kslab {

namespace {

double parseval_deviation(const Frame& fr) {
  const Matrix s = frame_operator(fr);
  return operator_norm(s - Matrix::Identity(s.rows(), s.cols()));
}

// Complements for eigenpairs taken in descending order; `skip_first` leaves
// out the top eigenvector (the lambda_1 = 1 case), `all` keeps even zero ones.
Matrix complements(const EigenDecomposition& ed, Index count_from_top_skip, bool keep_all, double threshold) {
  const Index n = ed.values.size();
  std::vector<Vector> cols;
  for (Index k = n - 1 - count_from_top_skip; k >= 0; --k) {  // descending
    const double lambda = ed.values(k);
    if (!keep_all && lambda >= threshold) continue;
    cols.push_back(std::sqrt(std::max(0.0, 1.0 - lambda)) * ed.vectors.col(k));
  }
  Matrix h(n, static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) h.col(static_cast<Index>(c)) = cols[c];
  return h;
}

}  // namespace

DilationResult naimark_dilate(const Frame& fr, const Tolerances& tol) {
  const double dev = parseval_deviation(fr);
  if (dev > tol.check_tol) {
    throw ContractViolation("naimark_dilate: frame is not Parseval, ||S - I|| = " + std::to_string(dev));
  }
  DilationResult out;
  out.ambient_dim = fr.size();
  out.projection = gram_matrix(fr);
  out.embedding = fr.analysis();
  out.added_vectors.synthesis = Matrix(fr.dim(), 0);
  out.added_vectors.field = fr.field;
  out.parseval_deviation = dev;
  return out;
}

DilationResult dilate_operator(const Matrix& T, const Tolerances& tol, DilateOptions opt) {
  if (!is_square(T) || T.rows() < 1) throw ContractViolation("dilate_operator: T must be square and nonempty");
  require_finite(T, "dilate_operator");
  const double norm = operator_norm(T);
  Matrix op = T;
  bool normalized = false;
  if (norm > 1.0 + tol.check_tol) {
    if (!opt.normalize) {
      throw ContractViolation("dilate_operator: ||T|| = " + std::to_string(norm) + " exceeds 1");
    }
    op /= norm;
    normalized = true;
  }
  const Index n = op.rows();
  const Field field = op.imag().isZero(0.0) ? Field::real : Field::complex;

  // Bessel family f_i = T g_i are the columns of T.
  const Frame family(op, field, "Tg");
  const EigenDecomposition ed = sym_eig(frame_operator(family), tol);
  const double lambda1 = ed.values(n - 1);
  const bool strict = lambda1 < 1.0 - tol.check_tol;
  // lambda_1 = 1: h_2..h_n (n - 1 vectors, zeros included), ambient 2n - 1.
  // lambda_1 < 1: h_1..h_n, ambient 2n.
  const Matrix h = complements(ed, strict ? 0 : 1, true, 1.0);

  Matrix combined(n, n + h.cols());
  combined.leftCols(n) = op;
  combined.rightCols(h.cols()) = h;
  const Frame parseval(combined, field, "Tg+h");

  DilationResult out = naimark_dilate(parseval, tol);
  out.added_vectors = Frame();
  out.added_vectors.synthesis = h;
  out.added_vectors.field = field;
  out.added_vectors.label = "h";
  out.strict_contraction = strict;
  out.normalized = normalized;
  out.input_norm = norm;
  if (strict) out.notes.push_back("lambda_1 < 1: appended n complements, ambient dimension 2n");
  if (normalized) out.notes.push_back("input scaled to operator norm one");
  return out;
}

Frame parseval_complete(const Frame& fr, const Tolerances& tol) {
  const EigenDecomposition ed = sym_eig(frame_operator(fr), tol);
  const double lmax = ed.values(ed.values.size() - 1);
  if (lmax > 1.0 + tol.check_tol) {
    throw ContractViolation("parseval_complete: Bessel bound exceeds 1 by " + std::to_string(lmax - 1.0));
  }
  const Matrix h = complements(ed, 0, false, 1.0 - tol.check_tol);
  Frame out = fr;
  out.synthesis.conservativeResize(Eigen::NoChange, fr.size() + h.cols());
  out.synthesis.rightCols(h.cols()) = h;
  out.label = fr.label.empty() ? "completed" : fr.label + "/completed";
  return out;
}

}  // namespace kslab

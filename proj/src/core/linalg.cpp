#include "kslab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kslab {

std::string to_string(Field f) { return f == Field::real ? "real" : "complex"; }

Field field_from_string(const std::string& s) {
  if (s == "real") return Field::real;
  if (s == "complex") return Field::complex;
  throw ContractViolation("field must be \"real\" or \"complex\", got \"" + s + "\"");
}

void Tolerances::validate() const {
  if (!(eig_tol > 0) || !(rank_tol > 0) || !(check_tol > 0)) {
    throw ContractViolation("tolerances must be strictly positive");
  }
}

bool is_square(const Matrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const Matrix& m, double tol) {
  if (!is_square(m)) return false;
  const double scale = std::max(1.0, m.norm());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i <= j; ++i) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale) return false;
    }
  }
  return true;
}

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

void require_finite(const Matrix& m, const std::string& what) {
  if (!all_finite(m)) throw ContractViolation(what + ": non-finite entry");
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The 2x2 Hermitian block
// [[a, b],[conj b, d]] with b = |b| e^{i phi} equals Phi R_block Phi^* for
// Phi = diag(1, e^{-i phi}), so G = Phi R with the classical real rotation R.
void rotate(Matrix& a, Matrix& v, Index p, Index q) {
  const Scalar b = a(p, q);
  const double mag = std::abs(b);
  if (mag == 0.0) return;
  const Scalar phase = b / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
  const Scalar g_pp = c;
  const Scalar g_pq = s;
  const Scalar g_qp = -s * std::conj(phase);
  const Scalar g_qq = c * std::conj(phase);

  const Index n = a.rows();
  for (Index i = 0; i < n; ++i) {  // A <- A G
    const Scalar aip = a(i, p);
    const Scalar aiq = a(i, q);
    a(i, p) = aip * g_pp + aiq * g_qp;
    a(i, q) = aip * g_pq + aiq * g_qq;
  }
  for (Index j = 0; j < n; ++j) {  // A <- G^* A
    const Scalar apj = a(p, j);
    const Scalar aqj = a(q, j);
    a(p, j) = std::conj(g_pp) * apj + std::conj(g_qp) * aqj;
    a(q, j) = std::conj(g_pq) * apj + std::conj(g_qq) * aqj;
  }
  for (Index i = 0; i < n; ++i) {  // V <- V G
    const Scalar vip = v(i, p);
    const Scalar viq = v(i, q);
    v(i, p) = vip * g_pp + viq * g_qp;
    v(i, q) = vip * g_pq + viq * g_qq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
}

}  // namespace

EigenDecomposition sym_eig(const Matrix& m, const Tolerances& tol) {
  if (!is_square(m)) throw ContractViolation("sym_eig: matrix is not square");
  if (!is_hermitian(m, tol.check_tol)) throw ContractViolation("sym_eig: matrix is not Hermitian");
  const Index n = m.rows();
  Matrix a = 0.5 * (m + m.adjoint());
  for (Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  Matrix v = Matrix::Identity(n, n);

  const double frob = a.norm();
  const double target = std::numeric_limits<double>::epsilon() * frob;
  double prev = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= target || off >= prev) break;
    prev = off;
    for (Index p = 0; p + 1 < n; ++p)
      for (Index q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > std::numeric_limits<double>::min()) rotate(a, v, p, q);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out{RealVector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

RealVector sym_eigenvalues(const Matrix& m, const Tolerances& tol) { return sym_eig(m, tol).values; }

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector(0);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (is_square(m) && is_hermitian(m, 1e-14)) {
    const RealVector ev = sym_eigenvalues(m);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  return singular_values(m)(0);
}

std::size_t numeric_rank(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  const RealVector sv = singular_values(m);
  if (sv(0) == 0.0) return 0;
  const double cutoff = tol.rank_tol * sv(0) * static_cast<double>(std::max(m.rows(), m.cols()));
  std::size_t r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

Matrix select_columns(const Matrix& m, std::span<const int> idx) {
  Matrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= m.cols()) throw ContractViolation("column index out of range");
    out.col(static_cast<Index>(k)) = m.col(idx[k]);
  }
  return out;
}

Matrix principal_submatrix(const Matrix& m, std::span<const int> idx) {
  const auto k = static_cast<Index>(idx.size());
  Matrix out(k, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < k; ++i) out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

Matrix orthonormal_basis(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  std::size_t r = 0;
  if (sv(0) > 0.0) {
    const double cutoff = tol.rank_tol * sv(0) * static_cast<double>(std::max(m.rows(), m.cols()));
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++r;
  }
  return svd.matrixU().leftCols(static_cast<Index>(r));
}

IndexSet complement(std::size_t M, std::span<const int> idx) {
  std::vector<char> in(M, 0);
  for (int i : idx) in.at(static_cast<std::size_t>(i)) = 1;
  IndexSet out;
  for (std::size_t i = 0; i < M; ++i)
    if (!in[i]) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace kslab

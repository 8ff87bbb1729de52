#include <cmath>
#include <numbers>

#include "kslab/frame.hpp"

namespace kslab {

Frame::Frame(Matrix s, Field f, std::string l) : synthesis(std::move(s)), field(f), label(std::move(l)) {
  require_finite(synthesis, "frame");
  if (synthesis.rows() < 1 || synthesis.cols() < 1) throw ContractViolation("frame: need n >= 1 and M >= 1");
}

namespace {
Matrix isometry_from_gaussian(int rows, int cols, Field field, Rng& rng) {
  const Matrix g = gaussian_matrix(rows, cols, field, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  // Fix column phases so the factor is a deterministic function of g.
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Scalar d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}
}  // namespace

Frame gen_random_unit_frame(int n, int M, std::uint64_t seed, Field field) {
  if (n < 1 || M < 1) throw ContractViolation("gen_random_unit_frame: need n >= 1 and M >= 1");
  Rng rng(seed);
  Matrix s(n, M);
  for (int i = 0; i < M; ++i) {
    Vector v(n);
    do {
      for (int k = 0; k < n; ++k) v(k) = rng.normal_scalar(field);
    } while (v.norm() == 0.0);
    s.col(i) = v / v.norm();
  }
  Frame fr(std::move(s), field, "random_unit");
  fr.seed = seed;
  if (M < n) fr.notes.push_back("M < n: frame does not span");
  return fr;
}

Frame gen_harmonic_frame(int n, int M) {
  if (n < 1 || M < n) throw ContractViolation("gen_harmonic_frame: need 1 <= n <= M");
  Matrix s(n, M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < M; ++i) {
    for (int k = 0; k < n; ++k) {
      // reduce i*k mod M first so the angle stays exact for large products
      const auto e = static_cast<double>((static_cast<long long>(i) * k) % M);
      const double angle = 2.0 * std::numbers::pi * e / static_cast<double>(M);
      s(k, i) = scale * Scalar(std::cos(angle), std::sin(angle));
    }
  }
  return Frame(std::move(s), Field::complex, "harmonic");
}

Matrix gen_random_projection(int M, int n, std::uint64_t seed, Field field) {
  if (n < 1 || n > M) throw ContractViolation("gen_random_projection: need 1 <= n <= M");
  Rng rng(seed);
  const Matrix v = isometry_from_gaussian(M, n, field, rng);
  Matrix p = v * v.adjoint();
  p = 0.5 * (p + p.adjoint());
  return p;
}

Matrix gen_random_unitary(int n, std::uint64_t seed, Field field) {
  if (n < 1) throw ContractViolation("gen_random_unitary: need n >= 1");
  Rng rng(seed);
  return isometry_from_gaussian(n, n, field, rng);
}

Frame gen_perturbed_union_of_bases(int n, int K, double noise, std::uint64_t seed, Field field) {
  if (n < 1 || K < 1) throw ContractViolation("gen_perturbed_union_of_bases: need n >= 1 and K >= 1");
  if (!(noise >= 0.0)) throw ContractViolation("gen_perturbed_union_of_bases: noise must be >= 0");
  Rng rng(seed);
  Matrix s(n, static_cast<Index>(n) * K);
  for (int b = 0; b < K; ++b) s.middleCols(static_cast<Index>(b) * n, n) = isometry_from_gaussian(n, n, field, rng);
  if (noise > 0.0) {
    s += noise * gaussian_matrix(n, s.cols(), field, rng);
    for (Index i = 0; i < s.cols(); ++i) s.col(i).normalize();
  }
  Frame fr(std::move(s), field, "union_of_bases");
  fr.seed = seed;
  return fr;
}

Matrix gen_random_hermitian(int n, std::uint64_t seed, Field field) {
  Rng rng(seed);
  const Matrix g = gaussian_matrix(n, n, field, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace kslab

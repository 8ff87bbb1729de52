#include <gtest/gtest.h>

#include <algorithm>

#include "kslab/frames.hpp"

using namespace kslab;

namespace {

Frame orthonormal(int n) { return Frame(Matrix::Identity(n, n), Field::real); }

Matrix eye(int n) { return Matrix::Identity(n, n); }

std::vector<double> sorted_eigs(const Matrix& H) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

}  // namespace

TEST(FrameOperator, Examples) {
  EXPECT_LE((frame_operator(orthonormal(3)) - eye(3)).norm(), 1e-15);
  const Frame h = gen_harmonic_frame(2, 4);
  Matrix S = Matrix::Zero(2, 2);
  for (Index i = 0; i < 4; ++i) S += h.synthesis.col(i) * h.synthesis.col(i).adjoint();
  EXPECT_LE((frame_operator(h) - S).norm(), 1e-14);
  EXPECT_LE((frame_operator(h) - 2.0 * eye(2)).norm(), 1e-14);
  Matrix f(2, 1);
  f << Scalar(0.6, 0.0), Scalar(0.0, 0.8);
  const Matrix Sf = frame_operator(Frame(f, Field::complex));
  EXPECT_EQ(numeric_rank(Sf), 1u);
  EXPECT_LE((Sf - f * f.adjoint()).norm(), 1e-15);
}

TEST(GramMatrix, Examples) {
  EXPECT_LE((gram_matrix(orthonormal(4)) - eye(4)).norm(), 1e-15);
  Matrix two(2, 2);
  two << 1, 1, 0, 0;
  Matrix ones = Matrix::Ones(2, 2);
  EXPECT_LE((gram_matrix(Frame(two, Field::real)) - ones).norm(), 1e-15);
  const Frame r = gen_random_unit_frame(3, 7, 21);
  const auto es = sorted_eigs(frame_operator(r));
  auto eg = sorted_eigs(gram_matrix(r));
  eg.erase(eg.begin(), eg.begin() + 4);  // the 4 zero eigenvalues
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(es[i], eg[i], 1e-9);
}

TEST(SpectralSummary, Examples) {
  const SpectralSummary o = spectral_summary(orthonormal(3));
  EXPECT_NEAR(o.lower_frame_bound, 1.0, 1e-12);
  EXPECT_NEAR(o.upper_frame_bound, 1.0, 1e-12);
  EXPECT_TRUE(o.is_parseval);
  const SpectralSummary h = spectral_summary(gen_harmonic_frame(2, 4));
  EXPECT_NEAR(h.lower_frame_bound, 2.0, 1e-12);
  EXPECT_NEAR(h.upper_frame_bound, 2.0, 1e-12);
  EXPECT_TRUE(h.is_tight);
  EXPECT_TRUE(h.is_equal_norm);
  EXPECT_FALSE(h.is_parseval);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_GE(spectral_summary(gen_random_unit_frame(4, 9, seed)).bessel_bound, 1.0 - 1e-12);
  }
  const SpectralSummary z = spectral_summary(Frame(Matrix::Zero(2, 3), Field::real));
  EXPECT_EQ(z.lower_frame_bound, 0.0);
  EXPECT_EQ(z.upper_frame_bound, 0.0);
  EXPECT_FALSE(z.spans);
}

TEST(ParsevalNormalize, Examples) {
  const Frame h = gen_harmonic_frame(3, 3);
  EXPECT_LE((parseval_normalize(h).synthesis - h.synthesis).norm(), 1e-12);
  const Frame p = parseval_normalize(gen_harmonic_frame(2, 4));
  EXPECT_LE((p.synthesis - gen_harmonic_frame(2, 4).synthesis / std::sqrt(2.0)).norm(), 1e-12);
  EXPECT_LE((frame_operator(p) - eye(2)).norm(), 1e-12);
  Matrix deficient(3, 2);
  deficient << 1, 0, 0, 1, 0, 0;
  EXPECT_THROW(parseval_normalize(Frame(deficient, Field::real)), ContractViolation);
}

TEST(CanonicalDual, Examples) {
  EXPECT_LE((canonical_dual(orthonormal(3)).synthesis - eye(3)).norm(), 1e-14);
  const Frame h = gen_harmonic_frame(2, 6);
  EXPECT_LE((canonical_dual(h).synthesis - h.synthesis / 3.0).norm(), 1e-12);
  const Frame r = gen_random_unit_frame(4, 9, 3);
  const Frame d = canonical_dual(r);
  Rng rng(99);
  for (int t = 0; t < 20; ++t) {
    const Vector f = gaussian_matrix(4, 1, Field::complex, rng).col(0);
    EXPECT_LE((reconstruct(r, d, f) - f).norm(), 1e-9);
  }
  Matrix deficient(2, 2);
  deficient << 1, 1, 0, 0;
  EXPECT_THROW(canonical_dual(Frame(deficient, Field::real)), ContractViolation);
}

TEST(ProjectFrame, Examples) {
  const Frame r = gen_random_unit_frame(3, 5, 4);
  EXPECT_LE((project_frame(r, eye(3)).synthesis - r.synthesis).norm(), 1e-15);
  // Parseval frame projected is Parseval on the range.
  const Frame p = parseval_normalize(gen_random_unit_frame(4, 8, 5));
  const Matrix P = gen_random_projection(4, 2, 6);
  const Frame q = project_frame(p, P);
  EXPECT_LE((frame_operator(q) - P).norm(), 1e-10);
  // Rank-one projection on harmonic n=2, M=4: bounds 2 on the line.
  Vector u(2);
  u << Scalar(0.6, 0.0), Scalar(0.0, 0.8);
  const Matrix P1 = u * u.adjoint();
  const auto [lo, hi] = frame_bounds_on(project_frame(gen_harmonic_frame(2, 4), P1), u);
  EXPECT_NEAR(lo, 2.0, 1e-12);
  EXPECT_NEAR(hi, 2.0, 1e-12);
  Matrix notP(2, 2);
  notP << 1, 1, 0, 0;
  EXPECT_THROW(project_frame(gen_harmonic_frame(2, 4), notP), ContractViolation);
}

TEST(FramesEquivalent, Examples) {
  const Frame r = gen_random_unit_frame(3, 6, 8);
  EXPECT_TRUE(frames_equivalent(r, r));
  Matrix L = gen_random_hermitian(3, 2) + 5.0 * eye(3);
  EXPECT_TRUE(frames_equivalent(r, Frame(L * r.synthesis, Field::complex)));
  Matrix z = eye(3);
  z.col(2).setZero();
  EXPECT_FALSE(frames_equivalent(orthonormal(3), Frame(z, Field::real)));
}

TEST(Subframe, Examples) {
  const Frame h = gen_harmonic_frame(2, 4);
  const IndexSet all{0, 1, 2, 3};
  EXPECT_EQ(subframe(h, all).synthesis, h.synthesis);
  const Frame s = subframe(h, IndexSet{2});
  EXPECT_EQ(s.size(), 1);
  const double n2 = h.synthesis.col(2).squaredNorm();
  EXPECT_NEAR(spectral_summary(s).upper_frame_bound, n2, 1e-12);
  const Frame pair = subframe(h, IndexSet{0, 2});
  Matrix S = h.synthesis.col(0) * h.synthesis.col(0).adjoint() + h.synthesis.col(2) * h.synthesis.col(2).adjoint();
  const auto oracle = sorted_eigs(S);
  const RealVector got = sym_eigenvalues(frame_operator(pair));
  EXPECT_NEAR(got(0), oracle[0], 1e-12);
  EXPECT_NEAR(got(1), oracle[1], 1e-12);
}

TEST(FrameSequence, Examples) {
  const FrameSequenceInfo z = is_frame_sequence(Frame(Matrix::Zero(3, 2), Field::real));
  EXPECT_TRUE(z.degenerate);
  EXPECT_FALSE(z.lower_on_span.has_value());
  Matrix pair = Matrix::Zero(3, 2);
  pair(0, 0) = 1;
  pair(1, 1) = 1;
  const FrameSequenceInfo o = is_frame_sequence(Frame(pair, Field::real));
  EXPECT_TRUE(o.is_frame_sequence);
  ASSERT_TRUE(o.lower_on_span);
  EXPECT_NEAR(*o.lower_on_span, 1.0, 1e-12);
  const Frame r = gen_random_unit_frame(5, 3, 12);
  const FrameSequenceInfo ri = is_frame_sequence(r);
  ASSERT_TRUE(ri.lower_on_span);
  EXPECT_NEAR(*ri.lower_on_span, sorted_eigs(gram_matrix(r)).front(), 1e-10);
  EXPECT_EQ(ri.rank, 3u);
}

TEST(Projection, Predicate) {
  EXPECT_TRUE(is_projection(gen_random_projection(6, 3, 1), 1e-10));
  EXPECT_FALSE(is_projection(2.0 * eye(2), 1e-10));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kslab/decomposition.hpp"
#include "kslab/frames.hpp"

using namespace kslab;

namespace {

Matrix eye(int n) { return Matrix::Identity(n, n); }

Frame orthonormal(int n) { return Frame(eye(n), Field::real); }

// Two orthonormal bases interleaved: columns 2i and 2i+1 come from different bases.
Frame interleaved_bases(int n, std::uint64_t seed) {
  const Matrix U = gen_random_unitary(n, seed);
  Matrix T(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    T.col(2 * i) = eye(n).col(i);
    T.col(2 * i + 1) = U.col(i);
  }
  return Frame(T, Field::complex);
}

std::pair<double, double> gram_extremes(const Frame& fr, const IndexSet& idx) {
  const Matrix B = subframe(fr, idx).synthesis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(B.adjoint() * B);
  return {es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1)};
}

}  // namespace

TEST(RieszBounds, Examples) {
  const RieszCertificate o = riesz_bounds(orthonormal(4), IndexSet{0, 2, 3});
  EXPECT_NEAR(o.lower, 1.0, 1e-14);
  EXPECT_NEAR(o.upper, 1.0, 1e-14);
  Matrix dup(2, 2);
  dup << 1, 1, 0, 0;
  EXPECT_NEAR(riesz_bounds(Frame(dup, Field::real), IndexSet{0, 1}).lower, 0.0, 1e-14);
  const Frame r = gen_random_unit_frame(5, 8, 3);
  const IndexSet idx{1, 4, 6};
  const auto [lo, hi] = gram_extremes(r, idx);
  const RieszCertificate c = riesz_bounds(r, idx);
  EXPECT_NEAR(c.lower, lo, 1e-12);
  EXPECT_NEAR(c.upper, hi, 1e-12);
}

TEST(RieszBounds, LowerPositiveIffIndependent) {
  const Frame r = gen_random_unit_frame(3, 6, 4);
  for_each_subset(6, 4, [&](const IndexSet& s) {
    EXPECT_EQ(riesz_bounds(r, s).lower, 0.0);
    return true;
  });
  for_each_subset(6, 3, [&](const IndexSet& s) {
    EXPECT_EQ(riesz_bounds(r, s).lower > 0.0, numeric_rank(subframe(r, s).synthesis) == 3u);
    return true;
  });
}

TEST(EpsilonRiesz, Orthonormal) {
  const DecompositionReport d = epsilon_riesz_partition(orthonormal(5), 0.1, 3);
  EXPECT_TRUE(d.verdict);
  EXPECT_EQ(d.r_found, 1);
}

TEST(EpsilonRiesz, InterleavedBasesSplitByCopy) {
  const Frame f = interleaved_bases(4, 7);
  const DecompositionReport d = epsilon_riesz_partition(f, 0.1, 3);
  ASSERT_TRUE(d.verdict);
  EXPECT_EQ(d.r_found, 2);
  for (const auto& c : d.certificates) {
    EXPECT_GE(c.lower, 0.9 - 1e-9);
    EXPECT_LE(c.upper, 1.1 + 1e-9);
    const auto [lo, hi] = gram_extremes(f, c.block);
    EXPECT_NEAR(c.lower, lo, 1e-10);
    EXPECT_NEAR(c.upper, hi, 1e-10);
  }
}

TEST(EpsilonRiesz, DuplicatesSeparated) {
  Matrix T(3, 4);
  T << 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0;
  const Frame f(T, Field::real);
  const DecompositionReport one = epsilon_riesz_partition(f, 0.1, 1);
  EXPECT_FALSE(one.verdict);
  const DecompositionReport two = epsilon_riesz_partition(f, 0.1, 2);
  ASSERT_TRUE(two.verdict);
  ASSERT_TRUE(two.partition);
  EXPECT_NE(two.partition->block_of(0), two.partition->block_of(3));
}

TEST(EpsilonRiesz, RequiresUnitNorm) {
  EXPECT_THROW(epsilon_riesz_partition(Frame(2.0 * eye(2), Field::real), 0.1, 2), ContractViolation);
}

TEST(EpsilonRiesz, GreedyPathBeyondExhaustiveLimit) {
  const Frame f = interleaved_bases(8, 3);  // M = 16 > 12
  const DecompositionReport d = epsilon_riesz_partition(f, 0.1, 3);
  EXPECT_FALSE(d.exhaustive);
  ASSERT_TRUE(d.verdict);
  for (const auto& c : d.certificates) EXPECT_LE(c.epsilon_achieved, 0.1 + 1e-9);
}

TEST(Feichtinger, Examples) {
  EXPECT_EQ(feichtinger_partition(orthonormal(4), 1.0, 2).r_found, 1);
  const DecompositionReport d = feichtinger_partition(interleaved_bases(3, 5), 1.0, 3);
  ASSERT_TRUE(d.verdict);
  EXPECT_EQ(d.r_found, 2);
  Matrix T(2, 3);
  T << 1, 1, 0, 0, 0, 1;
  const DecompositionReport dup = feichtinger_partition(Frame(T, Field::real), 0.5, 3);
  ASSERT_TRUE(dup.partition);
  EXPECT_NE(dup.partition->block_of(0), dup.partition->block_of(1));
}

TEST(Ric, Examples) {
  EXPECT_NEAR(restricted_isometry(orthonormal(5), 3).delta, 0.0, 1e-14);
  Matrix par(2, 3);
  par << 1, 1, 0, 0, 0, 1;
  EXPECT_NEAR(restricted_isometry(Frame(par, Field::real), 2).delta, 1.0, 1e-14);
  const Frame h = gen_harmonic_frame(4, 8);
  double pairwise = 0.0;
  int pairs = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      pairwise = std::max(pairwise, std::abs(h.synthesis.col(i).dot(h.synthesis.col(j))));
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 28);
  const RicResult r = restricted_isometry(h, 2);
  EXPECT_NEAR(r.delta, pairwise, 1e-12);
  EXPECT_EQ(r.subsets, 8u + 28u);
}

TEST(Ric, MonotoneAndDeltaOne) {
  Frame f = gen_random_unit_frame(4, 9, 2);
  f.synthesis.col(3) *= 1.3;
  double d1 = 0.0;
  for (Index i = 0; i < f.size(); ++i) d1 = std::max(d1, std::abs(f.synthesis.col(i).squaredNorm() - 1.0));
  EXPECT_NEAR(restricted_isometry(f, 1).delta, d1, 1e-12);
  double prev = 0.0;
  for (int S = 1; S <= 4; ++S) {
    const double d = restricted_isometry(f, S).delta;
    EXPECT_GE(d, prev);
    prev = d;
  }
}

TEST(Ric, BudgetAndSampled) {
  const Frame f = gen_random_unit_frame(4, 30, 1);
  EXPECT_THROW(restricted_isometry(f, 4, 1000), BudgetExceeded);
  const RicResult s = restricted_isometry_sampled(f, 3, 500, 1);
  EXPECT_FALSE(s.exact);
  EXPECT_LE(s.delta, restricted_isometry(f, 3).delta + 1e-12);
}

TEST(Tp1, Orthonormal) {
  const Tp1Report t = tp1_partition(orthonormal(5), 2, 0.5);
  EXPECT_TRUE(t.verified);
  EXPECT_EQ(t.r_used, 1);
  for (double d : t.block_delta) EXPECT_NEAR(d, 0.0, 1e-12);
}

TEST(Tp1, TwoCopies) {
  Matrix T(3, 6);
  T << eye(3), eye(3);
  const Tp1Report t = tp1_partition(Frame(T, Field::real), 2, 0.5);
  ASSERT_TRUE(t.verified);
  for (const auto& b : t.partition.nonempty_members()) {
    EXPECT_LE(restricted_isometry(subframe(Frame(T, Field::real), b), std::min<int>(2, b.size())).delta, 0.5);
  }
  // copies of the same vector never share a block
  for (int i = 0; i < 3; ++i) EXPECT_NE(t.partition.block_of(i), t.partition.block_of(i + 3));
}

TEST(Tp1, RandomFramePostHocVerified) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Frame f = gen_random_unit_frame(10, 20, seed);
    const Tp1Report t = tp1_partition(f, 3, 0.6, std::nullopt, 64, seed);
    ASSERT_TRUE(t.verified) << "seed " << seed;
    for (const auto& b : t.partition.nonempty_members()) {
      EXPECT_LE(restricted_isometry(subframe(f, b), std::min<int>(3, b.size())).delta, 0.6);
    }
  }
}

TEST(RadoHornCheck, Examples) {
  EXPECT_TRUE(rado_horn_check(orthonormal(4), 1).holds);
  Matrix T(2, 3);
  T << 1, 1, 1, 0, 0, 0;
  const RadoHornCheck c = rado_horn_check(Frame(T, Field::real), 2);
  EXPECT_FALSE(c.holds);
  ASSERT_TRUE(c.violator);
  EXPECT_EQ(*c.violator, (IndexSet{0, 1, 2}));
  for (int K : {2, 3}) {
    EXPECT_TRUE(rado_horn_check(parseval_normalize(gen_harmonic_frame(3, 3 * K)), K).holds);
  }
}

TEST(RadoHornPartition, Examples) {
  const Partition one = rado_horn_partition(orthonormal(4), 1);
  EXPECT_EQ(one.blocks(), 1);
  for (auto [n, K] : {std::pair{2, 2}, {3, 3}}) {
    const Frame f = parseval_normalize(gen_harmonic_frame(n, n * K));
    const Partition p = rado_horn_partition(f, K);
    const auto blocks = p.nonempty_members();
    ASSERT_EQ(static_cast<int>(blocks.size()), K);
    std::size_t total = 0;
    for (const auto& b : blocks) {
      EXPECT_EQ(static_cast<int>(b.size()), n);
      EXPECT_EQ(numeric_rank(subframe(f, b).synthesis), static_cast<std::size_t>(n));
      total += b.size();
    }
    EXPECT_EQ(total, static_cast<std::size_t>(n * K));
  }
}

TEST(RadoHornPartition, InfeasibleCarriesViolator) {
  Matrix T(2, 4);
  T << 1, 1, 1, 0, 0, 0, 0, 1;
  try {
    rado_horn_partition(Frame(T, Field::real), 2);
    FAIL() << "expected RadoHornInfeasible";
  } catch (const RadoHornInfeasible& e) {
    const IndexSet& J = e.violator();
    const std::size_t rk = numeric_rank(subframe(Frame(T, Field::real), J).synthesis);
    EXPECT_GT(J.size(), 2 * rk);
  }
}

TEST(RadoHornPartition, RandomBlocksIndependentAndCovering) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Frame f = gen_random_unit_frame(4, 11, seed);
    const Partition p = rado_horn_partition(f, 3);
    std::size_t total = 0;
    for (const auto& b : p.nonempty_members()) {
      EXPECT_EQ(numeric_rank(subframe(f, b).synthesis), b.size());
      total += b.size();
    }
    EXPECT_EQ(total, 11u);
  }
}

TEST(Subspace, IsLarge) {
  const LargeCheck full = is_large(Subspace::from_spanning(eye(4)), 0.9);
  EXPECT_TRUE(full.large);
  for (double c : full.column_norms) EXPECT_NEAR(c, 1.0, 1e-14);
  Matrix e0 = Matrix::Zero(2, 1);
  e0(0, 0) = 1;
  const LargeCheck line = is_large(Subspace::from_spanning(e0), 1e-6);
  EXPECT_FALSE(line.large);
  EXPECT_NEAR(line.min_norm, 0.0, 1e-15);
  Rng rng(4);
  const Subspace H = Subspace::from_spanning(gaussian_matrix(8, 4, Field::complex, rng));
  EXPECT_EQ(H.dim(), 4);
  double scan = 1e300;
  for (int i = 0; i < 8; ++i) scan = std::min(scan, (H.projector * eye(8).col(i)).norm());
  EXPECT_NEAR(is_large(H, 0.1).min_norm, scan, 1e-12);
}

TEST(Subspace, Decomposable) {
  const Subspace full = Subspace::from_spanning(eye(4));
  EXPECT_TRUE(is_r_decomposable(full, Partition({0, 1, 0, 1})).decomposable);
  Rng rng(5);
  const Subspace H = Subspace::from_spanning(gaussian_matrix(6, 2, Field::complex, rng));
  const DecomposableCheck bad = is_r_decomposable(H, Partition({0, 0, 0, 1, 1, 2}));
  EXPECT_FALSE(bad.decomposable);
  ASSERT_TRUE(bad.failing_block);
  EXPECT_EQ(*bad.failing_block, 0);
}

TEST(Subspace, ConstructedFromBesselPerturbation) {
  // H = span{e_i + g_i} inside C^{2n}: e_i on the first n coordinates, small g_i
  // on the last n. The partition {first n} is then decomposable for H.
  const int n = 4;
  Rng rng(8);
  Matrix V = Matrix::Zero(2 * n, n);
  V.topRows(n) = eye(n);
  V.bottomRows(n) = 0.2 * gaussian_matrix(n, n, Field::complex, rng);
  const Subspace H = Subspace::from_spanning(V);
  std::vector<int> labels(2 * n);
  for (int i = 0; i < 2 * n; ++i) labels[i] = i < n ? 0 : 1;
  const DecomposableCheck dc = is_r_decomposable(H, Partition(labels));
  EXPECT_TRUE(dc.decomposable);
}

TEST(DecompositionVectors, FullSpaceSingletons) {
  const Subspace full = Subspace::from_spanning(eye(3));
  const DecompositionVectors dv = decomposition_vectors(full, Partition({0, 1, 2}));
  for (int j = 0; j < 3; ++j) EXPECT_EQ(dv.vectors[j].col(0), eye(3).col(j));
}

TEST(DecompositionVectors, ResidualAndPattern) {
  Matrix V(3, 2);
  V << 1, 0, 0, 1, 0.5, 0.3;
  const Subspace H = Subspace::from_spanning(V);
  const Partition p({0, 0, 1});
  const DecompositionVectors dv = decomposition_vectors(H, p);
  for (std::size_t j = 0; j < dv.blocks.size(); ++j) {
    for (std::size_t k = 0; k < dv.blocks[j].size(); ++k) {
      const Vector f = dv.vectors[j].col(static_cast<Index>(k));
      EXPECT_LE((H.projector * f - f).norm(), 1e-9);
      for (int l : dv.blocks[j]) EXPECT_EQ(f(l), l == dv.blocks[j][k] ? Scalar(1.0) : Scalar(0.0));
    }
  }
}

TEST(DecompositionVectors, NonDecomposableThrows) {
  Matrix V = Matrix::Zero(3, 1);
  V(0, 0) = 1;
  EXPECT_THROW(decomposition_vectors(Subspace::from_spanning(V), Partition({0, 0, 1})), ContractViolation);
}

TEST(MixedNorm, Examples) {
  Vector e = Vector::Zero(5);
  e(2) = 1;
  EXPECT_DOUBLE_EQ(mixed_norm(e), 2.0);
  EXPECT_EQ(mixed_norm(Vector::Zero(4)), 0.0);
  for (int n : {4, 16, 64}) {
    const double expected = (std::sqrt(2.0) + 1.0 / std::sqrt(static_cast<double>(n))) / (std::sqrt(2.0) + 1.0);
    EXPECT_NEAR(mixed_norm(mixed_norm_counterexample(n)), expected, 1e-12);
    EXPECT_NEAR(mixed_norm_counterexample_value(n), expected, 1e-15);
    // bounded away from one for n >= 2
    EXPECT_LE(mixed_norm(mixed_norm_counterexample(n)), (std::sqrt(2.0) + std::sqrt(0.5)) / (std::sqrt(2.0) + 1.0));
  }
}

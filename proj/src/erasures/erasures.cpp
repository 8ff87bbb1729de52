#include "kslab/erasures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kslab/frames.hpp"

namespace kslab {

namespace {

bool parseval_within(const Frame& fr, const Tolerances& tol) {
  const Matrix S = frame_operator(fr);
  return (S - Matrix::Identity(S.rows(), S.cols())).norm() <= tol.check_tol * std::max<double>(1.0, S.rows());
}

// lambda_min of the frame operator of the columns idx (0 for an empty family).
double lower_bound_of(const Matrix& T, const IndexSet& idx) {
  if (idx.empty()) return 0.0;
  const Matrix Tj = select_columns(T, idx);
  return sym_eigenvalues(Tj * Tj.adjoint())(0);
}

// lambda_max of the frame operator of the columns idx, from the smaller Gram side.
double upper_bound_of(const Matrix& T, const IndexSet& idx) {
  if (idx.empty()) return 0.0;
  const Matrix Tj = select_columns(T, idx);
  const Matrix small = Tj.cols() <= Tj.rows() ? Matrix(Tj.adjoint() * Tj) : Matrix(Tj * Tj.adjoint());
  const RealVector ev = sym_eigenvalues(small);
  return ev(ev.size() - 1);
}

}  // namespace

ErasureReport erasure_robustness(const Frame& fr, int k, int histogram_bins, std::uint64_t budget,
                                 const Tolerances& tol) {
  const auto M = static_cast<int>(fr.size());
  if (k < 0 || k > M) throw ContractViolation("erasure_robustness: need 0 <= k <= M");
  const std::uint64_t count = binomial(M, k);
  if (count > budget) {
    throw BudgetExceeded("erasure_robustness: C(" + std::to_string(M) + ", " + std::to_string(k) + ") = " +
                         std::to_string(count) + " subsets exceed the budget");
  }
  ErasureReport rep;
  rep.k = k;
  rep.parseval = parseval_within(fr, tol);
  if (!rep.parseval) rep.notes.push_back("input is not Parseval within tolerance; complementarity not asserted");
  double norm_sq = 0.0, max_norm_sq = 0.0, min_norm_sq = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < fr.size(); ++i) {
    norm_sq = fr.synthesis.col(i).squaredNorm();
    max_norm_sq = std::max(max_norm_sq, norm_sq);
    min_norm_sq = std::min(min_norm_sq, norm_sq);
  }
  if (max_norm_sq - min_norm_sq > tol.check_tol * std::max(1.0, max_norm_sq)) rep.notes.push_back("input is not equal-norm");

  std::vector<double> values;
  rep.worst_lower_bound = std::numeric_limits<double>::infinity();
  if (rep.parseval) rep.complement_residual = 0.0;
  for_each_subset(M, k, [&](const IndexSet& J) {
    ++rep.subsets;
    const IndexSet keep = complement(fr.size(), J);
    const double lower = lower_bound_of(fr.synthesis, keep);
    if (rep.parseval) {
      const double r = std::abs(lower - (1.0 - upper_bound_of(fr.synthesis, J)));
      rep.complement_residual = std::max(*rep.complement_residual, r);
      if (r > tol.check_tol) rep.complement_holds = false;
    }
    if (lower < rep.worst_lower_bound) {
      rep.worst_lower_bound = lower;
      rep.worst_subset = J;
    }
    if (histogram_bins > 0) values.push_back(lower);
    return true;
  });
  if (histogram_bins > 0 && !values.empty()) {
    Histogram h;
    h.lo = *std::min_element(values.begin(), values.end());
    h.hi = *std::max_element(values.begin(), values.end());
    h.counts.assign(static_cast<std::size_t>(histogram_bins), 0);
    const double width = (h.hi - h.lo) / histogram_bins;
    for (double v : values) {
      auto b = width > 0.0 ? static_cast<std::size_t>((v - h.lo) / width) : 0;
      ++h.counts[std::min(b, h.counts.size() - 1)];
    }
    rep.distribution = std::move(h);
  }
  return rep;
}

BipartitionReport cc_partition_search(const Frame& fr, double epsilon, int max_size, const Tolerances& tol) {
  const auto M = static_cast<int>(fr.size());
  if (M > max_size || M > 62) {
    throw BudgetExceeded("cc_partition_search: " + std::to_string(M) + " vectors exceed the bipartition limit of " +
                         std::to_string(max_size));
  }
  BipartitionReport rep;
  rep.epsilon = epsilon;
  rep.parseval = parseval_within(fr, tol);
  if (!rep.parseval) rep.notes.push_back("input is not Parseval within tolerance");
  rep.best = -1.0;
  // index 0 always sits in J: each bipartition is visited once
  const std::uint64_t total = std::uint64_t{1} << (M - 1);
  IndexSet J, Jc;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    J.assign(1, 0);
    Jc.clear();
    for (int i = 1; i < M; ++i) ((mask >> (i - 1)) & 1 ? J : Jc).push_back(i);
    ++rep.evaluated;
    const double v = std::min(lower_bound_of(fr.synthesis, J), lower_bound_of(fr.synthesis, Jc));
    if (v > rep.best) {
      rep.best = v;
      rep.witness = J;
    }
  }
  rep.verdict = rep.best >= epsilon;
  return rep;
}

CccReport ccc_partition_search(const Frame& fr, int r_max, double epsilon, const SearchOptions& opt,
                               const Tolerances& tol) {
  const Matrix G = gram_matrix(fr);
  CccReport rep;
  rep.epsilon = epsilon;
  rep.r_max = r_max;
  rep.parseval = parseval_within(fr, tol);
  if (!rep.parseval) rep.notes.push_back("input is not Parseval within tolerance");
  const bool exhaustive = exhaustive_fits(G.rows(), r_max, opt);
  const BlockSearchResult found = exhaustive ? min_block_norm_exhaustive(G, r_max, opt) : min_block_norm_local(G, r_max, opt);
  if (!exhaustive) rep.seed = opt.seed;
  rep.partition = found.partition;
  rep.exhaustive = found.exhaustive;
  rep.evaluated = found.evaluated;
  for (const auto& block : rep.partition.nonempty_members()) {
    const double bessel = upper_bound_of(fr.synthesis, block);
    const double compressed = operator_norm(principal_submatrix(G, block));
    rep.cross_residual = std::max(rep.cross_residual, std::abs(bessel - compressed));
    rep.block_bounds.push_back(bessel);
    rep.achieved = std::max(rep.achieved, bessel);
  }
  if (rep.cross_residual > 1e-9) rep.notes.push_back("block Bessel bound and Gram compression disagree");
  rep.verdict = rep.achieved <= 1.0 - epsilon + tol.check_tol;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

int real_rank(const RMatrix& cols, const Tolerances& tol) {
  if (cols.cols() == 0) return 0;
  return static_cast<int>(numeric_rank(cols.cast<Scalar>(), tol));
}

RMatrix real_columns(const RMatrix& T, const IndexSet& idx) {
  RMatrix out(T.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = T.col(idx[k]);
  return out;
}

// A unit vector orthogonal to every column, or an empty vector if they span.
RVector null_vector(const RMatrix& cols, Rng& rng) {
  const Index n = cols.rows();
  if (cols.cols() == 0) {
    RVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.normal();
    return v.normalized();
  }
  Eigen::JacobiSVD<RMatrix> svd(cols.transpose(), Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max<double>(1.0, sv.size() ? sv(0) : 0.0) * static_cast<double>(std::max(cols.rows(), cols.cols()));
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (rank == n) return {};
  const RMatrix N = svd.matrixV().rightCols(n - rank);
  RVector c(N.cols());
  for (Index i = 0; i < c.size(); ++i) c(i) = rng.normal();
  return (N * c).normalized();
}

}  // namespace

PhaseReport phase_retrieval_check(const Frame& fr, std::uint64_t seed, std::uint64_t trials, int max_size,
                                  const Tolerances& tol) {
  if (fr.field != Field::real || fr.synthesis.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw ContractViolation("phase_retrieval_check: only real frames are supported");
  }
  const auto M = static_cast<int>(fr.size());
  if (M > max_size || M > 62) {
    throw BudgetExceeded("phase_retrieval_check: " + std::to_string(M) + " vectors exceed the bipartition limit of " +
                         std::to_string(max_size));
  }
  const RMatrix T = fr.synthesis.real();
  const auto n = static_cast<int>(T.rows());
  PhaseReport rep;
  rep.seed = seed;
  rep.notes.push_back("complement property used as the injectivity criterion");

  rep.injective = true;
  const std::uint64_t total = std::uint64_t{1} << (M - 1);
  IndexSet S, Sc;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    S.assign(1, 0);
    Sc.clear();
    for (int i = 1; i < M; ++i) ((mask >> (i - 1)) & 1 ? S : Sc).push_back(i);
    ++rep.bipartitions;
    if (real_rank(real_columns(T, S), tol) == n || real_rank(real_columns(T, Sc), tol) == n) continue;
    rep.injective = false;
    rep.violation = std::make_pair(S, Sc);
    break;
  }
  if (!rep.injective) return rep;

  // Cross-validation: look for f, g with |<f, f_i>| = |<g, f_i>| for all i and g != +-f.
  Rng rng(seed);
  const auto modulus_match = [&](const RVector& f, const RVector& g) {
    const RVector a = (T.transpose() * f).cwiseAbs();
    const RVector b = (T.transpose() * g).cwiseAbs();
    return (a - b).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, a.maxCoeff());
  };
  const auto same_up_to_sign = [](const RVector& f, const RVector& g) {
    return std::min((f - g).norm(), (f + g).norm()) <= 1e-6 * std::max(1.0, f.norm());
  };
  const Eigen::ColPivHouseholderQR<RMatrix> qr(T.transpose());
  for (std::uint64_t t = 0; t < trials && rep.cross_validation_ok; ++t) {
    ++rep.trials;
    if (t % 2 == 0) {
      // random f and sign pattern; solve T^T g = signs * |T^T f| in least squares
      RVector f(n);
      for (int i = 0; i < n; ++i) f(i) = rng.normal();
      RVector b = T.transpose() * f;
      for (Index i = 0; i < b.size(); ++i) b(i) = std::abs(b(i)) * (rng.below(2) ? 1.0 : -1.0);
      const RVector g = qr.solve(b);
      if (modulus_match(f, g) && !same_up_to_sign(f, g)) {
        rep.cross_validation_ok = false;
        rep.counterexample = "sign-pattern trial " + std::to_string(t);
      }
    } else {
      // random bipartition: u orthogonal to the S side, v to the S^c side
      S.clear();
      Sc.clear();
      for (int i = 0; i < M; ++i) (rng.below(2) ? S : Sc).push_back(i);
      const RVector u = null_vector(real_columns(T, S), rng);
      const RVector v = null_vector(real_columns(T, Sc), rng);
      if (u.size() == 0 || v.size() == 0) continue;
      const RVector f = u + v;
      const RVector g = u - v;
      if (modulus_match(f, g) && !same_up_to_sign(f, g)) {
        rep.cross_validation_ok = false;
        rep.counterexample = "bipartition trial " + std::to_string(t);
      }
    }
  }
  return rep;
}

}  // namespace kslab

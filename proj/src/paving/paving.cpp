#include "kslab/paving.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kslab/frames.hpp"

namespace kslab {

Matrix diagonal_projection(int M, std::span<const int> A) {
  if (M < 0) throw ContractViolation("diagonal_projection: negative size");
  Matrix q = Matrix::Zero(M, M);
  for (int i : A) {
    if (i < 0 || i >= M) throw ContractViolation("diagonal_projection: index out of range");
    q(i, i) = 1.0;
  }
  return q;
}

double delta_diag(const Matrix& T) {
  if (!is_square(T)) throw ContractViolation("delta_diag: matrix must be square");
  double d = 0.0;
  for (Index i = 0; i < T.rows(); ++i) d = std::max(d, std::abs(T(i, i)));
  return d;
}

Matrix off_diagonal_part(const Matrix& T) {
  Matrix out = T;
  out.diagonal().setZero();
  return out;
}

BlockNorms paving_norm(const Matrix& T, const Partition& p) { return block_norms(off_diagonal_part(T), p); }

namespace {

PavingReport from_search(PavingForm form, const BlockSearchResult& r, double epsilon) {
  PavingReport rep;
  rep.form = form;
  rep.partition = r.partition;
  rep.achieved = r.norms.max;
  rep.blocks_detail = r.norms.per_block;
  rep.epsilon = epsilon;
  rep.exhaustive = r.exhaustive;
  rep.evaluated = r.evaluated;
  rep.sweeps_used = r.sweeps_used;
  return rep;
}

BlockSearchResult search(const Matrix& H, int r_max, const SearchOptions& opt, bool force_local) {
  if (!force_local && exhaustive_fits(H.rows(), r_max, opt)) return min_block_norm_exhaustive(H, r_max, opt);
  return min_block_norm_local(H, r_max, opt);
}

bool within(double achieved, double bound, const Tolerances& tol) {
  return achieved <= bound + tol.check_tol * std::max(1.0, std::abs(bound));
}

}  // namespace

PavingReport pave_exhaustive(const Matrix& T, int r_max, double epsilon, const SearchOptions& opt,
                             const Tolerances& tol) {
  if (!is_square(T)) throw ContractViolation("pave_exhaustive: matrix must be square");
  require_finite(T, "pave_exhaustive");
  const Matrix off = off_diagonal_part(T);
  PavingReport rep = from_search(PavingForm::off_diagonal, min_block_norm_exhaustive(off, r_max, opt), epsilon);
  rep.reference_norm = operator_norm(off);
  rep.bound = epsilon * rep.reference_norm;
  rep.verdict = within(rep.achieved, rep.bound, tol);
  return rep;
}

PavingReport pave_local(const Matrix& T, int r, double epsilon, const SearchOptions& opt, const Tolerances& tol) {
  if (!is_square(T)) throw ContractViolation("pave_local: matrix must be square");
  require_finite(T, "pave_local");
  const Matrix off = off_diagonal_part(T);
  PavingReport rep = from_search(PavingForm::off_diagonal, min_block_norm_local(off, r, opt), epsilon);
  rep.seed = opt.seed;
  rep.reference_norm = operator_norm(off);
  rep.bound = epsilon * rep.reference_norm;
  rep.verdict = within(rep.achieved, rep.bound, tol);
  return rep;
}

PavingReport pave_projection_check(const Matrix& P, int r_max, double epsilon, double delta,
                                   const SearchOptions& opt, const Tolerances& tol) {
  if (!is_projection(P, tol.check_tol)) throw ContractViolation("pave_projection_check: input is not a projection");
  const bool local = !exhaustive_fits(P.rows(), r_max, opt);
  PavingReport rep = from_search(PavingForm::projection, search(P, r_max, opt, local), epsilon);
  if (local) rep.seed = opt.seed;
  rep.delta_diag = delta_diag(P);
  rep.precondition_ok = *rep.delta_diag <= delta;
  if (!rep.precondition_ok) rep.notes.push_back("precondition violated: delta(P) > delta");
  rep.reference_norm = operator_norm(P);
  rep.bound = 1.0 - epsilon;
  rep.verdict = within(rep.achieved, rep.bound, tol);

  // ||Q_A P Q_A|| = ||P Q_A||^2 on every witness block
  double residual = 0.0;
  for (const auto& block : rep.partition.nonempty_members()) {
    const double compressed = operator_norm(principal_submatrix(P, block));
    const double s = operator_norm(select_columns(P, block));
    residual = std::max(residual, std::abs(compressed - s * s));
  }
  rep.identity_residual = residual;
  return rep;
}

PavingReport weaver_check(const Frame& fr, double B, double epsilon, int r_max, const SearchOptions& opt,
                          const Tolerances& tol) {
  const SpectralSummary ss = spectral_summary(fr, tol);
  double max_norm = 0.0;
  for (Index i = 0; i < fr.size(); ++i) max_norm = std::max(max_norm, fr.synthesis.col(i).norm());

  const Matrix G = gram_matrix(fr);
  const bool local = !exhaustive_fits(G.rows(), r_max, opt);
  PavingReport rep = from_search(PavingForm::frame_blocks, search(G, r_max, opt, local), epsilon);
  if (local) rep.seed = opt.seed;
  if (max_norm > 1.0 + tol.check_tol) {
    rep.precondition_ok = false;
    rep.notes.push_back("precondition violated: some ||f_i|| > 1");
  }
  if (ss.bessel_bound > B + tol.check_tol) {
    rep.precondition_ok = false;
    rep.notes.push_back("precondition violated: Bessel bound " + std::to_string(ss.bessel_bound) + " exceeds B");
  }
  rep.reference_norm = ss.bessel_bound;
  rep.bound = B - epsilon;
  rep.verdict = within(rep.achieved, rep.bound, tol);
  return rep;
}

// ---------------------------------------------------------------------------

double block_mass(const Matrix& A, Index i, const IndexSet& block) {
  double s = 0.0;
  for (int m : block) s += A(i, m).real();
  return s;
}

namespace {

void check_wkhb_input(const Matrix& A, const Tolerances& tol) {
  if (!is_square(A)) throw ContractViolation("wkhb_partition: matrix must be square");
  require_finite(A, "wkhb_partition");
  for (Index j = 0; j < A.cols(); ++j) {
    if (A(j, j) != Scalar(0.0)) throw ContractViolation("wkhb_partition: nonzero diagonal entry");
    for (Index i = 0; i < A.rows(); ++i) {
      if (A(i, j).imag() != 0.0 || A(i, j).real() < 0.0) throw ContractViolation("wkhb_partition: negative or complex entry");
      if (std::abs(A(i, j).real() - A(j, i).real()) > tol.check_tol * std::max(1.0, std::abs(A(i, j).real()))) {
        throw ContractViolation("wkhb_partition: matrix is not symmetric");
      }
    }
  }
}

double potential(const Matrix& A, const std::vector<IndexSet>& members) {
  double s = 0.0;
  for (const auto& block : members)
    for (int i : block) s += block_mass(A, i, block);
  return s;
}

}  // namespace

bool verify_wkhb_certificate(const Matrix& A, const Partition& p, std::vector<std::vector<double>>* masses_out) {
  const auto members = p.members();
  const auto r = static_cast<std::size_t>(p.blocks());
  std::vector<std::vector<double>> masses(p.size(), std::vector<double>(r));
  bool ok = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < r; ++j) {
      masses[i][j] = block_mass(A, static_cast<Index>(i), members[j]);
      total += masses[i][j];
    }
    const double own = masses[i][static_cast<std::size_t>(p.block_of(i))];
    for (std::size_t l = 0; l < r; ++l)
      if (own > masses[i][l]) ok = false;
    const double row_total = block_mass(A, static_cast<Index>(i), complement(p.size(), std::vector<int>{}));
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(row_total, total);
    if (own * static_cast<double>(r) > row_total + slack * static_cast<double>(r)) ok = false;
  }
  if (masses_out) *masses_out = std::move(masses);
  return ok;
}

WkhbResult wkhb_partition(const Matrix& A, int r, std::uint64_t seed, const Tolerances& tol) {
  check_wkhb_input(A, tol);
  if (r < 1) throw ContractViolation("wkhb_partition: r must be >= 1");
  const auto M = static_cast<std::size_t>(A.rows());
  const auto ur = static_cast<std::size_t>(r);
  Rng rng(seed);
  std::vector<int> labels(M);
  for (auto& l : labels) l = static_cast<int>(rng.below(ur));
  std::vector<IndexSet> members(ur);
  for (std::size_t i = 0; i < M; ++i) members[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));

  WkhbResult out;
  out.initial_potential = potential(A, members);
  double current = out.initial_potential;
  out.smallest_decrement = std::numeric_limits<double>::infinity();
  // Strict improvement per move; each move lowers the potential by
  // 2 (own - target) > 0, so the scan terminates.
  const std::uint64_t move_cap = 1'000'000;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < M; ++i) {
      const auto own = static_cast<std::size_t>(labels[i]);
      const double own_mass = block_mass(A, static_cast<Index>(i), members[own]);
      std::size_t target = own;
      double target_mass = own_mass;
      for (std::size_t j = 0; j < ur; ++j) {
        if (j == own) continue;
        const double m = block_mass(A, static_cast<Index>(i), members[j]);
        if (m < target_mass) {  // ascending j: lowest id wins ties
          target = j;
          target_mass = m;
        }
      }
      if (target == own) continue;
      std::erase(members[own], static_cast<int>(i));
      auto& dest = members[target];
      dest.insert(std::upper_bound(dest.begin(), dest.end(), static_cast<int>(i)), static_cast<int>(i));
      labels[i] = static_cast<int>(target);
      const double next = potential(A, members);
      if (current - next > 0.0) out.smallest_decrement = std::min(out.smallest_decrement, current - next);
      current = next;
      moved = true;
      if (++out.moves > move_cap) throw std::runtime_error("wkhb_partition: move cap exceeded");
    }
  }
  if (out.moves == 0) out.smallest_decrement = 0.0;
  out.final_potential = current;
  out.partition = Partition(labels, r, true);
  out.certificate_holds = verify_wkhb_certificate(A, out.partition, &out.masses);
  out.row_totals.resize(M);
  const IndexSet all = complement(M, std::vector<int>{});
  for (std::size_t i = 0; i < M; ++i) out.row_totals[i] = block_mass(A, static_cast<Index>(i), all);
  return out;
}

}  // namespace kslab

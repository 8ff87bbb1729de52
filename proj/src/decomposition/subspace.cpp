#include <algorithm>
#include <cmath>
#include <limits>

#include "kslab/decomposition.hpp"
#include "kslab/frames.hpp"

namespace kslab {

Subspace Subspace::from_spanning(const Matrix& vectors, const Tolerances& tol) {
  require_finite(vectors, "Subspace");
  Subspace h;
  h.ambient = vectors.rows();
  h.basis = orthonormal_basis(vectors, tol);
  h.projector = h.basis * h.basis.adjoint();
  return h;
}

LargeCheck is_large(const Subspace& H, double A) {
  LargeCheck out;
  out.min_norm = H.ambient > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  for (Index i = 0; i < H.ambient; ++i) {
    const double v = H.projector.col(i).norm();
    out.column_norms.push_back(v);
    out.min_norm = std::min(out.min_norm, v);
  }
  out.large = out.min_norm >= A;
  return out;
}

namespace {
void check_partition(const Subspace& H, const Partition& p, const char* what) {
  if (p.size() != static_cast<std::size_t>(H.ambient)) {
    throw ContractViolation(std::string(what) + ": partition size does not match the ambient dimension");
  }
}

Matrix basis_rows(const Subspace& H, const IndexSet& block) {
  Matrix rows(static_cast<Index>(block.size()), H.basis.cols());
  for (std::size_t k = 0; k < block.size(); ++k) rows.row(static_cast<Index>(k)) = H.basis.row(block[k]);
  return rows;
}
}  // namespace

DecomposableCheck is_r_decomposable(const Subspace& H, const Partition& p, const Tolerances& tol) {
  check_partition(H, p, "is_r_decomposable");
  DecomposableCheck out;
  const auto members = p.nonempty_members();
  for (std::size_t j = 0; j < members.size(); ++j) {
    const auto& block = members[j];
    const std::size_t rank = H.dim() == 0 ? 0 : numeric_rank(basis_rows(H, block), tol);
    out.block_ranks.push_back(rank);
    if (rank < block.size() && out.decomposable) {
      out.decomposable = false;
      out.failing_block = static_cast<int>(j);
    }
  }
  return out;
}

DecompositionVectors decomposition_vectors(const Subspace& H, const Partition& p, const Tolerances& tol) {
  const DecomposableCheck chk = is_r_decomposable(H, p, tol);
  if (!chk.decomposable) {
    throw ContractViolation("decomposition_vectors: block " + std::to_string(*chk.failing_block) +
                            " is rank deficient (rank " + std::to_string(chk.block_ranks[*chk.failing_block]) + ")");
  }
  DecompositionVectors out;
  out.blocks = p.nonempty_members();
  const Matrix& P = H.projector;
  for (const auto& block : out.blocks) {
    // h = P[:, E] c with (P[E, E] c) = e_i: the solution in span{P e_l : l in E}
    const Matrix PE = select_columns(P, block);
    const Matrix PEE = principal_submatrix(P, block);
    const Matrix coeff = PEE.fullPivLu().solve(Matrix::Identity(PEE.rows(), PEE.cols()));
    Matrix F = PE * coeff;
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = 0; b < block.size(); ++b) F(block[a], static_cast<Index>(b)) = a == b ? 1.0 : 0.0;
    Matrix G = F;
    for (std::size_t k = 0; k < block.size(); ++k) G(block[k], static_cast<Index>(k)) -= 1.0;
    out.g_bessel_bounds.push_back(G.size() == 0 ? 0.0 : std::pow(operator_norm(G), 2));
    out.vectors.push_back(std::move(F));
  }
  return out;
}

}  // namespace kslab

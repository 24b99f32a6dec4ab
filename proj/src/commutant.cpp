#include "covproc/commutant.hpp"

#include <cmath>

#include "covproc/spectral.hpp"

namespace covproc {

namespace {

// E^alpha_{ij} = (b_alpha/|G|) sum_g conj(alpha(g)_{ij}) W_g
ComplexMatrix matrix_unit(const Representation& w, const Representation& alpha,
                          int i, int j) {
  const int dim = w.dim;
  ComplexMatrix e(dim, dim);
  for (size_t g = 0; g < w.mats.size(); ++g) {
    const cplx coeff = std::conj(alpha.mats[g](i, j));
    if (coeff == cplx(0.0, 0.0)) continue;
    const ComplexMatrix& wg = w.mats[g];
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) e(r, c) += coeff * wg(r, c);
  }
  e *= cplx(static_cast<double>(alpha.dim) / w.group->order, 0.0);
  return e;
}

double column_norm(const ComplexMatrix& m, int j) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
  return std::sqrt(s);
}

void orthogonalize_against(std::vector<ComplexMatrix>& basis, ComplexMatrix& v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const ComplexMatrix& b : basis) {
      cplx ip(0.0, 0.0);
      for (int i = 0; i < v.rows(); ++i) ip += std::conj(b(i, 0)) * v(i, 0);
      for (int i = 0; i < v.rows(); ++i) v(i, 0) -= ip * b(i, 0);
    }
}

double vector_norm(const ComplexMatrix& v) {
  double s = 0.0;
  for (int i = 0; i < v.rows(); ++i) s += std::norm(v(i, 0));
  return std::sqrt(s);
}

// Column-pivoted orthonormalization of range(e11); must find exactly n
// vectors, anything else signals inconsistent irrep matrices.
std::vector<ComplexMatrix> multiplicity_space_basis(const ComplexMatrix& e11,
                                                    int n, double rank_tol) {
  const int dim = e11.rows();
  std::vector<ComplexMatrix> basis;
  std::vector<bool> used(dim, false);
  for (int pick = 0; pick < n; ++pick) {
    int best = -1;
    double best_norm = 0.0;
    ComplexMatrix best_vec;
    for (int j = 0; j < dim; ++j) {
      if (used[j]) continue;
      if (column_norm(e11, j) <= rank_tol) continue;
      ComplexMatrix v = e11.block(0, j, dim, 1);
      orthogonalize_against(basis, v);
      const double nrm = vector_norm(v);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = j;
        best_vec = std::move(v);
      }
    }
    if (best < 0 || best_norm <= rank_tol)
      throw error("adapted_basis: rank of E_11 below multiplicity");
    used[static_cast<size_t>(best)] = true;
    best_vec *= cplx(1.0 / best_norm, 0.0);
    basis.push_back(std::move(best_vec));
  }
  // any leftover column with significant residual means rank > n
  for (int j = 0; j < dim; ++j) {
    if (used[j]) continue;
    ComplexMatrix v = e11.block(0, j, dim, 1);
    orthogonalize_against(basis, v);
    if (vector_norm(v) > rank_tol)
      throw error("adapted_basis: rank of E_11 exceeds multiplicity");
  }
  return basis;
}

}  // namespace

BlockStructure block_structure(const Representation& u, const Representation& v,
                               const IrrepTable& irreps, double round_tol) {
  if (u.group != v.group) throw error("block_structure: group mismatch");
  const Representation w = bar_tensor_rep(u, v);
  const MultiplicityVector mv = multiplicities(w, irreps, round_tol);
  BlockStructure bs;
  bs.d1 = u.dim;
  bs.d2 = v.dim;
  for (size_t i = 0; i < irreps.irreps.size(); ++i) {
    if (mv.n[i] == 0) continue;
    Block blk;
    blk.label = irreps.irreps[i].label;
    blk.irrep_index = static_cast<int>(i);
    blk.b = irreps.irreps[i].dim;
    blk.n = mv.n[i];
    bs.blocks.push_back(std::move(blk));
    bs.d_c += mv.n[i];
    bs.d_n += mv.n[i] * mv.n[i];
    bs.total += irreps.irreps[i].dim * mv.n[i];
  }
  bs.K = static_cast<int>(bs.blocks.size());
  if (bs.total != bs.d1 * bs.d2)
    throw error("block_structure: dimension accounting failed");
  return bs;
}

bool is_abelian(const BlockStructure& bs) {
  for (const Block& b : bs.blocks)
    if (b.n != 1) return false;
  return true;
}

AdaptedBasis adapted_basis(const Representation& u, const Representation& v,
                           const IrrepTable& irreps, double tol) {
  AdaptedBasis ab;
  ab.structure = block_structure(u, v, irreps);
  ab.w = bar_tensor_rep(u, v);
  const int dim = ab.w.dim;
  ab.S = ComplexMatrix(dim, dim);

  const double rank_tol = std::max(tol, 1e-7);
  int col = 0;
  int comp = 0;
  for (const Block& blk : ab.structure.blocks) {
    const Representation& alpha =
        irreps.irreps[static_cast<size_t>(blk.irrep_index)];
    ab.block_irreps.push_back(alpha);
    ab.col_offset.push_back(col);
    ab.compressed_offset.push_back(comp);

    const ComplexMatrix e11 = matrix_unit(ab.w, alpha, 0, 0);
    std::vector<ComplexMatrix> mult_basis =
        multiplicity_space_basis(e11, blk.n, rank_tol);

    for (int i = 0; i < blk.b; ++i) {
      const ComplexMatrix ei1 =
          (i == 0) ? ComplexMatrix() : matrix_unit(ab.w, alpha, i, 0);
      for (int m = 0; m < blk.n; ++m) {
        ComplexMatrix s =
            (i == 0) ? mult_basis[static_cast<size_t>(m)]
                     : ei1 * mult_basis[static_cast<size_t>(m)];
        ab.S.set_block(0, col + i * blk.n + m, s);
      }
    }
    col += blk.b * blk.n;
    comp += blk.n;
  }

  // global re-orthonormalization pass; corrections here are at rounding level
  for (int j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        cplx ip(0.0, 0.0);
        for (int i = 0; i < dim; ++i) ip += std::conj(ab.S(i, k)) * ab.S(i, j);
        for (int i = 0; i < dim; ++i) ab.S(i, j) -= ip * ab.S(i, k);
      }
    const double nrm = column_norm(ab.S, j);
    if (nrm < 1.0 - 1e-6 || nrm > 1.0 + 1e-6)
      throw error("adapted_basis: loss of orthogonality beyond tol");
    for (int i = 0; i < dim; ++i) ab.S(i, j) /= nrm;
  }

  if (!ab.S.is_unitary(std::max(tol, 1e-10)))
    throw error("adapted_basis: basis not unitary within tol");
  return ab;
}

double block_diagonalization_residual(const AdaptedBasis& basis) {
  const int dim = basis.w.dim;
  const ComplexMatrix sdag = basis.S.adjoint();
  double worst = 0.0;
  for (size_t g = 0; g < basis.w.mats.size(); ++g) {
    ComplexMatrix rotated = sdag * basis.w.mats[g] * basis.S;
    ComplexMatrix target(dim, dim);
    for (size_t k = 0; k < basis.structure.blocks.size(); ++k) {
      const Block& blk = basis.structure.blocks[k];
      const ComplexMatrix& ag = basis.block_irreps[k].mats[g];
      target.set_block(basis.col_offset[k], basis.col_offset[k],
                       tensor_product(ag, ComplexMatrix::identity(blk.n)));
    }
    worst = std::max(worst, trace_norm(rotated - target));
  }
  return worst;
}

ComplexMatrix project_to_commutant(const ComplexMatrix& x,
                                   const Representation& w) {
  if (!x.square() || x.rows() != w.dim)
    throw error("project_to_commutant: dimension mismatch");
  const int count = static_cast<int>(w.mats.size());
  std::vector<const cplx*> mats(static_cast<size_t>(count));
  for (int g = 0; g < count; ++g) mats[static_cast<size_t>(g)] = w.mats[g].data();
  std::vector<double> weights(static_cast<size_t>(count), w.group->haar_weight());
  ComplexMatrix out(w.dim, w.dim);
  kernels::sandwich_sum(mats.data(), weights.data(), count, x.data(), out.data(),
                        w.dim);
  return out;
}

ComplexMatrix compress_map(const ComplexMatrix& x, const AdaptedBasis& basis) {
  if (!x.square() || x.rows() != basis.w.dim)
    throw error("compress_map: dimension mismatch");
  const ComplexMatrix twirled = project_to_commutant(x, basis.w);
  const ComplexMatrix z = basis.S.adjoint() * twirled * basis.S;
  ComplexMatrix out(basis.structure.d_c, basis.structure.d_c);
  for (size_t k = 0; k < basis.structure.blocks.size(); ++k) {
    const Block& blk = basis.structure.blocks[k];
    ComplexMatrix acc(blk.n, blk.n);
    for (int i = 0; i < blk.b; ++i)
      acc += z.block(basis.col_offset[k] + i * blk.n,
                     basis.col_offset[k] + i * blk.n, blk.n, blk.n);
    out.set_block(basis.compressed_offset[k], basis.compressed_offset[k], acc);
  }
  return out;
}

ComplexMatrix embed_map(const ComplexMatrix& y, const AdaptedBasis& basis) {
  if (!y.square() || y.rows() != basis.structure.d_c)
    throw error("embed_map: dimension mismatch");
  ComplexMatrix z(basis.w.dim, basis.w.dim);
  for (size_t k = 0; k < basis.structure.blocks.size(); ++k) {
    const Block& blk = basis.structure.blocks[k];
    const ComplexMatrix yk = y.block(basis.compressed_offset[k],
                                     basis.compressed_offset[k], blk.n, blk.n);
    ComplexMatrix eye_b = ComplexMatrix::identity(blk.b);
    eye_b *= cplx(1.0 / blk.b, 0.0);
    z.set_block(basis.col_offset[k], basis.col_offset[k],
                tensor_product(eye_b, yk));
  }
  return basis.S * z * basis.S.adjoint();
}

}  // namespace covproc

// Block structure of the commutant of bar(U) (x) V, an explicit adapted
// basis exhibiting it, and the compression/embedding channel pair that strips
// (restores) the repeated irrep factors.
//
// In the adapted basis, columns of a block with irrep dimension b and
// multiplicity n are ordered with the irrep-internal index outer and the
// multiplicity index inner, so a commutant element looks like 1_b (x) B with
// B an n x n matrix, and S^dagger W_g S restricted to the block equals
// alpha(g) (x) 1_n with alpha the catalog irrep matrices themselves.
#pragma once

#include <string>
#include <vector>

#include "covproc/group.hpp"

namespace covproc {

struct Block {
  std::string label;
  int irrep_index = -1;  // into the IrrepTable
  int b = 0;             // irrep dimension
  int n = 0;             // multiplicity
};

struct BlockStructure {
  int d1 = 0, d2 = 0;
  int K = 0;
  std::vector<Block> blocks;  // only n > 0, in irrep-table order
  int d_c = 0;                // sum n_k
  int d_n = 0;                // sum n_k^2
  int total = 0;              // sum b_k n_k = d1*d2
};

BlockStructure block_structure(const Representation& u, const Representation& v,
                               const IrrepTable& irreps,
                               double round_tol = kRoundTol);

bool is_abelian(const BlockStructure& bs);

struct AdaptedBasis {
  BlockStructure structure;
  ComplexMatrix S;  // unitary; columns are the adapted basis, block by block
  std::vector<int> col_offset;             // first S-column of each block
  std::vector<int> compressed_offset;      // first index of each block on H_P
  std::vector<Representation> block_irreps;  // catalog irreps, per block
  Representation w;  // bar(u) (x) v, kept for twirling and residual checks
};

AdaptedBasis adapted_basis(const Representation& u, const Representation& v,
                           const IrrepTable& irreps, double tol = kDefaultTol);

// max over g of || S^dagger W_g S - blockdiag(alpha_k(g) (x) 1_{n_k}) ||_1
double block_diagonalization_residual(const AdaptedBasis& basis);

// (1/|G|) sum_g W_g x W_g^dagger; the conditional expectation onto the
// commutant of w. Idempotent and trace preserving.
ComplexMatrix project_to_commutant(const ComplexMatrix& x,
                                   const Representation& w);

// Channel B(H1 (x) H2) -> B(H_P), d_P = d_c: twirl into the commutant,
// rotate to the adapted basis, trace out each block's 1_{b_k} factor.
ComplexMatrix compress_map(const ComplexMatrix& x, const AdaptedBasis& basis);

// Channel B(H_P) -> B(H1 (x) H2): pinch to the block diagonal, tensor each
// block with 1_{b_k}/b_k, rotate back. Inverts compress_map on the commutant.
ComplexMatrix embed_map(const ComplexMatrix& y, const AdaptedBasis& basis);

}  // namespace covproc

// Finite groups given by explicit multiplication tables, unitary
// representations with explicit matrices, characters, and multiplicity
// extraction through the character orthogonality relations. The uniform
// group average weights every element by 1/|G|.
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "covproc/matrix.hpp"

namespace covproc {

struct GroupTable {
  std::string name;
  int order = 0;
  std::vector<int> mul;      // row-major order x order
  std::vector<int> inverse;  // per element
  int identity = -1;
  std::vector<int> class_of;  // conjugacy class index per element
  int num_classes = 0;

  int at(int g, int h) const { return mul[static_cast<size_t>(g) * order + h]; }
  double haar_weight() const { return 1.0 / order; }
};

using GroupPtr = std::shared_ptr<const GroupTable>;

// Validates closure (index range), identity, inverses, and associativity
// (all triples when |G| <= 64, a deterministic sample otherwise), then
// derives inverses and conjugacy classes.
GroupPtr make_group(std::string name, int order, std::vector<int> mul);

struct Representation {
  GroupPtr group;
  std::string label;
  int dim = 0;
  std::vector<ComplexMatrix> mats;  // one unitary per element

  const ComplexMatrix& at(int g) const { return mats[g]; }
};

// Unitarity of every matrix and the homomorphism law on all pairs.
void validate_representation(const Representation& rep, double tol = kDefaultTol);

struct Character {
  GroupPtr group;
  std::vector<cplx> values;
};

bool is_class_function(const Character& chi, double tol = 1e-10);

struct IrrepTable {
  GroupPtr group;
  std::vector<Representation> irreps;

  int index_of(const std::string& label) const;
  const Representation& by_label(const std::string& label) const;
};

// Sum over squared dimensions equals |G|, every listed irrep is a valid
// representation, and characters are orthonormal.
void validate_irrep_table(const IrrepTable& table, double tol = kDefaultTol);

struct MultiplicityVector {
  std::vector<int> n;  // aligned with IrrepTable order
};

Character character_of(const Representation& rep);

// (1/|G|) sum_g conj(a(g)) b(g)
cplx char_inner(const Character& a, const Character& b);

// n_alpha = <chi_alpha, chi_w> rounded to the nearest integer; any deviation
// beyond round_tol is an error (it signals an invalid representation).
MultiplicityVector multiplicities(const Representation& w,
                                  const IrrepTable& irreps,
                                  double round_tol = kRoundTol);

// Element-wise conj(U_g) (x) V_g.
Representation bar_tensor_rep(const Representation& u, const Representation& v);
Representation tensor_rep(const Representation& u, const Representation& v);
Representation direct_sum_rep(const Representation& u, const Representation& v);

bool is_irreducible(const Representation& rep, double tol = kRoundTol);

struct OneDimMultReport {
  bool ok = false;  // every one-dimensional irrep has multiplicity <= 1
  std::vector<std::pair<std::string, int>> one_dim_mults;
};

// Requires u irreducible and dim v <= dim u.
OneDimMultReport one_dim_multiplicity_check(const Representation& u,
                                            const Representation& v,
                                            const IrrepTable& irreps);

struct GroupSystem {
  GroupPtr group;
  IrrepTable irreps;
};

// Runs every eager check on a freshly assembled system.
void validate_group_system(const GroupSystem& sys, double tol = kDefaultTol);

}  // namespace covproc

// Entropic quantities and the program-dimension bound formulas, plus the
// 1-design ensemble of covariant Choi states whose Holevo information chain
// certifies the lower bound. All logarithms are base 2.
#pragma once

#include <string>
#include <vector>

#include "covproc/processor.hpp"

namespace covproc {

struct Ensemble {
  std::vector<double> probs;
  std::vector<DensityMatrix> states;
};

void validate_ensemble(const Ensemble& e, double tol = kDefaultTol);

// h(eps) = -eps log2 eps - (1-eps) log2(1-eps); endpoints return 0.
double binary_entropy(double eps);

// chi = S(sum p_i rho_i) - sum p_i S(rho_i)
double holevo_information(const Ensemble& e, double tol = kDefaultTol);

// Per block k, the n_k computational basis states of the multiplicity space
// as covariant Choi states, all with weight 1/d_c. Their average is the
// block-normalized identity, so they form a 1-design for it.
struct DesignEnsemble {
  Ensemble ensemble;                 // the Choi states as density matrices
  std::vector<ChannelMap> channels;  // the same states as channels
};

DesignEnsemble one_design_ensemble(const AdaptedBasis& basis);

// d_P >= 2^{-2 h(eps)} * d_c^{1 - 2 eps}; equals d_c exactly at eps = 0.
double lower_bound(double eps, const BlockStructure& bs);

// d_P <= (1 + 2/eps)^{d_n}, eps in (0, 1).
double upper_bound_net(double eps, const BlockStructure& bs);

// The sphere-covering cardinality (1 + 2/eps)^n behind the upper bound.
double net_cardinality(double eps, int n);

struct ChainInequality {
  std::string name;
  double lhs = 0.0, rhs = 0.0, slack = 0.0;  // slack = lhs - rhs
  bool ok = false;
};

struct ChainReport {
  double chi_program = 0.0;
  double chi_choi = 0.0;         // ensemble of processor-implemented Chois
  double chi_compressed = 0.0;   // after the compression channel
  double chi_compressed_exact = 0.0;  // on the ideal targets (= log2 d_c)
  double log2_dp = 0.0;
  double afw_correction = 0.0;   // 2 eps log2 d_c + 2 h(eps)
  std::vector<ChainInequality> inequalities;
  bool ok = false;
};

// Evaluates every Holevo quantity of the lower-bound chain on the 1-design
// ensemble and checks the inequalities with tolerance tol.
ChainReport verify_lower_bound_chain(const Processor& p,
                                     const AdaptedBasis& basis,
                                     double eps = 0.0, double tol = 1e-8);

}  // namespace covproc

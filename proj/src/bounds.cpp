#include "covproc/bounds.hpp"

#include <cmath>

#include "covproc/spectral.hpp"

namespace covproc {

void validate_ensemble(const Ensemble& e, double tol) {
  if (e.probs.size() != e.states.size())
    throw error("ensemble: probability/state count mismatch");
  if (e.states.empty()) throw error("ensemble: empty");
  double sum = 0.0;
  for (double p : e.probs) {
    if (p < -tol) throw error("ensemble: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > std::max(tol, 1e-9))
    throw error("ensemble: probabilities do not sum to 1");
  const int side = e.states.front().dim();
  for (const DensityMatrix& s : e.states)
    if (s.dim() != side) throw error("ensemble: states of mixed dimension");
}

double binary_entropy(double eps) {
  if (eps < 0.0 || eps > 1.0) throw error("binary_entropy: eps outside [0, 1]");
  if (eps == 0.0 || eps == 1.0) return 0.0;
  return -eps * std::log2(eps) - (1.0 - eps) * std::log2(1.0 - eps);
}

double holevo_information(const Ensemble& e, double tol) {
  validate_ensemble(e, tol);
  const int side = e.states.front().dim();
  ComplexMatrix avg(side, side);
  double mean_entropy = 0.0;
  for (size_t i = 0; i < e.states.size(); ++i) {
    avg += e.probs[i] * e.states[i].matrix();
    if (e.probs[i] > 0.0)
      mean_entropy += e.probs[i] * von_neumann_entropy(e.states[i], tol);
  }
  return von_neumann_entropy(DensityMatrix::unchecked(avg), tol) - mean_entropy;
}

DesignEnsemble one_design_ensemble(const AdaptedBasis& basis) {
  DesignEnsemble out;
  const BlockStructure& bs = basis.structure;
  const double p = 1.0 / bs.d_c;
  for (size_t k = 0; k < bs.blocks.size(); ++k) {
    for (int j = 0; j < bs.blocks[k].n; ++j) {
      const int slot = basis.compressed_offset[k] + j;
      const ComplexMatrix choi =
          embed_map(ComplexMatrix::unit(bs.d_c, slot, slot), basis);
      out.ensemble.probs.push_back(p);
      out.ensemble.states.push_back(DensityMatrix::unchecked(choi));
      out.channels.push_back(channel_from_choi(choi, bs.d1, bs.d2));
    }
  }
  return out;
}

double lower_bound(double eps, const BlockStructure& bs) {
  if (eps < 0.0 || eps >= 1.0) throw error("lower_bound: eps outside [0, 1)");
  if (eps == 0.0) return static_cast<double>(bs.d_c);
  const double h = binary_entropy(eps);
  return std::exp2(-2.0 * h) *
         std::pow(static_cast<double>(bs.d_c), 1.0 - 2.0 * eps);
}

double net_cardinality(double eps, int n) {
  if (eps <= 0.0 || eps >= 1.0)
    throw error("net_cardinality: eps outside (0, 1)");
  const double base = 1.0 + 2.0 / eps;
  double value = 1.0;
  for (int i = 0; i < n; ++i) value *= base;
  return value;
}

double upper_bound_net(double eps, const BlockStructure& bs) {
  return net_cardinality(eps, bs.d_n);
}

ChainReport verify_lower_bound_chain(const Processor& p,
                                     const AdaptedBasis& basis, double eps,
                                     double tol) {
  const DesignEnsemble design = one_design_ensemble(basis);
  const size_t count = design.channels.size();
  const double prob = 1.0 / static_cast<double>(count);

  Ensemble programs, chois, compressed, compressed_exact;
  for (size_t i = 0; i < count; ++i) {
    const ComplexMatrix pi = p.program_for(design.channels[i]);
    programs.probs.push_back(prob);
    programs.states.push_back(DensityMatrix::unchecked(pi));

    const ComplexMatrix cind = induced_choi(p, pi);
    chois.probs.push_back(prob);
    chois.states.push_back(DensityMatrix::unchecked(cind));

    compressed.probs.push_back(prob);
    compressed.states.push_back(
        DensityMatrix::unchecked(compress_map(cind, basis)));

    compressed_exact.probs.push_back(prob);
    compressed_exact.states.push_back(DensityMatrix::unchecked(
        compress_map(design.channels[i].choi.m, basis)));
  }

  ChainReport report;
  report.chi_program = holevo_information(programs);
  report.chi_choi = holevo_information(chois);
  report.chi_compressed = holevo_information(compressed);
  report.chi_compressed_exact = holevo_information(compressed_exact);
  report.log2_dp = std::log2(static_cast<double>(p.d_p));
  report.afw_correction =
      2.0 * eps * std::log2(static_cast<double>(basis.structure.d_c)) +
      2.0 * binary_entropy(eps);

  auto add = [&](const std::string& name, double lhs, double rhs) {
    ChainInequality q;
    q.name = name;
    q.lhs = lhs;
    q.rhs = rhs;
    q.slack = lhs - rhs;
    q.ok = q.slack >= -tol;
    report.inequalities.push_back(q);
  };
  add("data processing (program >= implemented choi)", report.chi_program,
      report.chi_choi);
  add("data processing (choi >= compressed)", report.chi_choi,
      report.chi_compressed);
  add("afw (compressed >= exact - correction)", report.chi_compressed,
      report.chi_compressed_exact - report.afw_correction);
  add("program register (log2 d_P >= chi_program)", report.log2_dp,
      report.chi_program);

  report.ok = true;
  for (const ChainInequality& q : report.inequalities) report.ok &= q.ok;
  return report;
}

}  // namespace covproc

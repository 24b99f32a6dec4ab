// Programmable processors for covariant channels: measure-and-prepare,
// teleportation simulation, the compressed variant that strips irrep
// multiplicity factors from the program, processor twirling, and program
// purification.
//
// A processor is a channel B(H1 (x) HP) -> B(H2) together with the program
// assignment T -> pi_T. The channel action is kept as a linear callable so
// large program registers never force a materialized Choi matrix; the full
// Choi (on (H1 (x) HP) (x) H2, side d1*d_P*d2) is only assembled on request
// and below a size limit.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covproc/channel.hpp"

namespace covproc {

struct Povm {
  std::vector<ComplexMatrix> elements;

  // ||sum_g M_g - 1||_1
  double completeness_residual() const;
};

struct Processor {
  std::string kind;  // mp | teleport | compressed | twirled | purified | choi
  int d1 = 0, d2 = 0, d_p = 0;

  // Linear channel action on B(H1 (x) HP); inputs need not be Hermitian.
  std::function<ComplexMatrix(const ComplexMatrix&)> apply_full;
  // Program state (d_P x d_P density matrix) for a target channel. Throws
  // when the target lies outside what the builder supports.
  std::function<ComplexMatrix(const ChannelMap&)> program_for;

  GroupPtr group;
  std::string u_label, v_label;
  std::shared_ptr<const Povm> povm;           // teleportation measurement
  std::shared_ptr<const AdaptedBasis> basis;  // compressed processors
  std::vector<ChannelMap> mp_extremes;        // measure-and-prepare
  // Known full Choi matrix (choi-backed processors, twirls of small ones);
  // apply_full stays the canonical definition either way.
  std::shared_ptr<const ComplexMatrix> explicit_choi;
};

// P(x (x) program)
ComplexMatrix apply_processor(const Processor& p, const ComplexMatrix& x,
                              const ComplexMatrix& program);

// Choi state of the channel rho -> P(rho (x) program) on H1 (x) H2.
ComplexMatrix induced_choi(const Processor& p, const ComplexMatrix& program);

// Full processor Choi when d1*d_P*d2 <= side_limit, otherwise nullopt.
std::optional<ComplexMatrix> materialize_choi(const Processor& p,
                                              int side_limit = 256);

// CPTP report of the materialized processor channel; throws if over limit.
CptpReport processor_cptp_report(const Processor& p, double tol = kDefaultTol,
                                 int side_limit = 256);

// max_g ||[c_P, conj(U_g) (x) 1 (x) V_g]||_1 on the materialized Choi.
double processor_covariance_residual(const Processor& p,
                                     const Representation& u,
                                     const Representation& v,
                                     int side_limit = 256);

// Teleportation simulation: measure {M_g}, undo with V_g; the program is the
// Choi state of the target, d_P = d1*d2. Throws (with the residual) when the
// POVM fails to be complete, which happens exactly when u is reducible.
Processor build_teleport_processor(const Representation& u,
                                   const Representation& v,
                                   double tol = kDefaultTol);

// Teleportation composed with the embedding channel on the program register;
// the program is the compressed Choi, d_P = sum_k n_k.
Processor build_compressed_processor(const Representation& u,
                                     const Representation& v,
                                     const AdaptedBasis& basis,
                                     double tol = kDefaultTol);

// Measure the program in a fixed basis, prepare the selected extreme
// channel; d_P = number of extremes. Programs solve the convex decomposition
// by nonnegative least squares (hull membership within hull_tol).
// pure_programs selects the sqrt-amplitude superposition instead of diag(x).
Processor build_mp_processor(const std::vector<ChannelMap>& extremes,
                             bool pure_programs = false,
                             double hull_tol = 1e-8);

// The K extreme covariant Choi states of an abelian commutant, in block
// order. Requires is_abelian and u irreducible.
std::vector<ChannelMap> derive_extremes_abelian(const Representation& u,
                                                const AdaptedBasis& basis);

// Group average of the processor; implements the same channels and is
// (U (x) 1)V covariant.
Processor twirl_processor(const Processor& p, const Representation& u,
                          const Representation& v);

// Same channels with pure program states on a d_P^2 register (canonical
// purification of each program).
Processor purify_program(const Processor& p);

struct PurifiedDimBounds {
  int naive = 0;    // d_P^2
  int refined = 0;  // d_P * min(d1^2 (d2^2 - 1) + 1, d_P)
};
PurifiedDimBounds purified_dim_bounds(int d1, int d2, int d_p);

// Processor backed by an explicit Choi matrix (no program assignment).
Processor processor_from_choi(const ComplexMatrix& choi, int d1, int d_p,
                              int d2);

struct TargetCheck {
  int index = 0;
  bool program_ok = true;
  std::string note;
  double max_state_error = 0.0;  // max over states of (1/2)||P(rho,pi)-T(rho)||_1
  double choi_lo = 0.0, choi_hi = 0.0;  // diamond bounds vs the target
};

struct VerifyReport {
  std::string kind;
  int d_p = 0;
  std::vector<TargetCheck> targets;
  double max_error = 0.0;
  double max_choi_lo = 0.0, max_choi_hi = 0.0;
};

VerifyReport verify_processor(const Processor& p,
                              const std::vector<ChannelMap>& targets,
                              const std::vector<DensityMatrix>& states);

}  // namespace covproc

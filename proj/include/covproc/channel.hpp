// Channels in the Choi picture: CPTP validation, covariance testing, group
// twirling, seeded covariant sampling, Choi-based diamond-distance bounds,
// and the built-in channel families (depolarizing, Werner-Holevo, and the
// A4 family with its emergent qubit algebra).
//
// Choi convention: c_T = (id (x) T)(|Omega><Omega|) on H1 (x) H2, so a
// channel is UV-covariant iff [c_T, conj(U_g) (x) V_g] = 0 for all g.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "covproc/commutant.hpp"
#include "covproc/group.hpp"

namespace covproc {

struct ChoiState {
  ComplexMatrix m;  // (d1*d2) x (d1*d2)
  int d1 = 0, d2 = 0;
};

// Validates PSD / trace 1 / input marginal = 1_{d1}/d1 within tol.
ChoiState make_choi_state(const ComplexMatrix& m, int d1, int d2,
                          double tol = kDefaultTol);

enum class ChannelTag {
  custom,
  identity,
  depolarizing,
  werner_holevo,
  a4_unitary,
  a4_bloch,
};

struct ChannelMap {
  ChoiState choi;
  ChannelTag tag = ChannelTag::custom;
  double alpha_hat = 0.0;                  // depolarizing
  int power = 0;                           // a4_unitary exponent
  std::array<double, 3> lambda{0, 0, 0};   // a4_bloch coordinates

  int d1() const { return choi.d1; }
  int d2() const { return choi.d2; }
};

ChannelMap channel_from_choi(const ComplexMatrix& m, int d1, int d2,
                             double tol = kDefaultTol);

// Requires sum_m K_m^dagger K_m = 1_{d1} within tol; K_m are d2 x d1.
ChoiState choi_of_kraus(const std::vector<ComplexMatrix>& kraus, int d1, int d2,
                        double tol = kDefaultTol);

// Kraus operators from the Choi eigendecomposition (eigenvalues > tol).
std::vector<ComplexMatrix> kraus_of_choi(const ChoiState& c,
                                         double tol = kDefaultTol);

// T(x) = d1 * tr_1[(x^T (x) 1_{d2}) choi]; linear, x need not be Hermitian.
ComplexMatrix apply_choi(const ComplexMatrix& choi, int d1, int d2,
                         const ComplexMatrix& x);
DensityMatrix apply_channel(const ChannelMap& t, const DensityMatrix& rho);

struct CptpReport {
  double herm_residual = 0.0;
  double min_eig = 0.0;
  double trace_residual = 0.0;
  double marginal_residual = 0.0;
  bool hermitian_ok = false, psd_ok = false, trace_ok = false,
       marginal_ok = false;
  bool valid = false;
};

CptpReport is_cptp_choi(const ComplexMatrix& c, int d1, int d2,
                        double tol = kDefaultTol);

// ||[choi, conj(u) (x) v]||_1 for one covariance pair (u, v).
double covariance_residual(const ComplexMatrix& choi, const ComplexMatrix& u,
                           const ComplexMatrix& v);

struct CovarianceReport {
  bool covariant = false;
  double max_residual = 0.0;
};

CovarianceReport is_covariant(const ChannelMap& t, const Representation& u,
                              const Representation& v, double tol = kDefaultTol);

ChannelMap twirl_channel(const ChannelMap& t, const Representation& u,
                         const Representation& v);

// Normalized Wishart sample twirled into the commutant. Requires u
// irreducible so the result is a genuine Choi state.
ChannelMap random_covariant_channel(const Representation& u,
                                    const Representation& v, uint64_t seed);

struct DistanceBounds {
  double lo = 0.0;  // (1/2)||c_a - c_b||_1
  double hi = 0.0;  // (d1/2)||c_a - c_b||_1
};

// Two-sided bounds on the half diamond distance between the channels.
DistanceBounds channel_distance_bounds(const ChannelMap& a, const ChannelMap& b);

// after o before (apply `before` first).
ChannelMap compose_channels(const ChannelMap& after, const ChannelMap& before);

// ---- built-in families ------------------------------------------------

ChannelMap identity_channel(int d);
// T(rho) = alpha_hat tr(rho) 1/d + (1 - alpha_hat) rho,
// alpha_hat in [0, d^2/(d^2-1)].
ChannelMap depolarizing_channel(int d, double alpha_hat);
// W(rho) = ((tr rho) 1 - rho^T)/(d - 1); Choi is the normalized projector
// onto the antisymmetric subspace.
ChannelMap werner_holevo_channel(int d);
// T_j(rho) = V^j rho V^{*j}, j in {0, 1, 2}.
ChannelMap a4_unitary_channel(int j);
// Choi = (P + lambda_x V_X + lambda_y V_Y + lambda_z V_Z)/6, |lambda| <= 1.
ChannelMap a4_bloch_channel(const std::array<double, 3>& lambda);

struct ChannelParams {
  int d = 2;
  double alpha_hat = 0.0;
  int j = 0;
  std::array<double, 3> lambda{0, 0, 0};
};

// tag in {identity, depolarizing, werner_holevo, a4_unitary, a4_bloch}.
ChannelMap catalog_channel(const std::string& tag, const ChannelParams& params);

// The qubit algebra sitting inside the theta (x) theta commutant: V is the
// degree-3 unitary with theta_g V theta_g^dagger = phi1(g) V, F the flip on
// C^3 (x) C^3, P the projection onto the algebra, and V_X, V_Y, V_Z the
// Pauli triple (V_i V_j + V_j V_i = 2 delta_ij P).
struct A4Algebra {
  ComplexMatrix V;
  ComplexMatrix F;
  ComplexMatrix P;
  ComplexMatrix VX, VY, VZ;
};

const A4Algebra& a4_algebra();

}  // namespace covproc

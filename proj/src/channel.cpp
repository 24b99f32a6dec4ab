#include "covproc/channel.hpp"

#include <cmath>

#include "covproc/catalog.hpp"
#include "covproc/rng.hpp"
#include "covproc/spectral.hpp"

namespace covproc {

namespace {

ComplexMatrix flip_operator(int d) {
  ComplexMatrix f(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

void require_same_shape(const ChannelMap& a, const ChannelMap& b,
                        const char* where) {
  if (a.d1() != b.d1() || a.d2() != b.d2())
    throw error(std::string(where) + ": dimension mismatch");
}

}  // namespace

ChoiState make_choi_state(const ComplexMatrix& m, int d1, int d2, double tol) {
  const CptpReport r = is_cptp_choi(m, d1, d2, tol);
  if (!r.valid) {
    std::string what = "choi state invalid:";
    if (!r.hermitian_ok) what += " hermiticity";
    if (!r.psd_ok) what += " positivity";
    if (!r.trace_ok) what += " trace";
    if (!r.marginal_ok) what += " marginal";
    throw error(what);
  }
  return ChoiState{m, d1, d2};
}

ChannelMap channel_from_choi(const ComplexMatrix& m, int d1, int d2,
                             double tol) {
  ChannelMap t;
  t.choi = make_choi_state(m, d1, d2, tol);
  return t;
}

ChoiState choi_of_kraus(const std::vector<ComplexMatrix>& kraus, int d1, int d2,
                        double tol) {
  if (kraus.empty()) throw error("choi_of_kraus: empty Kraus list");
  ComplexMatrix acc(d1, d1);
  for (const ComplexMatrix& k : kraus) {
    if (k.rows() != d2 || k.cols() != d1)
      throw error("choi_of_kraus: Kraus operator must be d2 x d1");
    acc += k.adjoint() * k;
  }
  if (max_abs_diff(acc, ComplexMatrix::identity(d1)) > tol)
    throw error("choi_of_kraus: Kraus set is not trace preserving within tol");
  const ComplexMatrix omega = maximally_entangled_state(d1);
  ComplexMatrix c(d1 * d2, d1 * d2);
  const ComplexMatrix eye = ComplexMatrix::identity(d1);
  for (const ComplexMatrix& k : kraus)
    c += sandwich(tensor_product(eye, k), omega);
  return ChoiState{c, d1, d2};
}

std::vector<ComplexMatrix> kraus_of_choi(const ChoiState& c, double tol) {
  const HermitianEig e = eigh(c.m);
  std::vector<ComplexMatrix> out;
  for (size_t i = 0; i < e.values.size(); ++i) {
    if (e.values[i] < -tol) throw error("kraus_of_choi: choi not PSD");
    if (e.values[i] <= tol) continue;
    const double scale = std::sqrt(c.d1 * e.values[i]);
    ComplexMatrix k(c.d2, c.d1);
    for (int a = 0; a < c.d1; ++a)
      for (int b = 0; b < c.d2; ++b)
        k(b, a) = scale * e.vectors(a * c.d2 + b, static_cast<int>(i));
    out.push_back(std::move(k));
  }
  return out;
}

ComplexMatrix apply_choi(const ComplexMatrix& choi, int d1, int d2,
                         const ComplexMatrix& x) {
  if (x.rows() != d1 || x.cols() != d1)
    throw error("apply_choi: input must be d1 x d1");
  const ComplexMatrix left =
      tensor_product(x.transpose(), ComplexMatrix::identity(d2));
  ComplexMatrix prod = left * choi;
  ComplexMatrix out = partial_trace(prod, {d1, d2}, 1);
  out *= cplx(static_cast<double>(d1), 0.0);
  return out;
}

DensityMatrix apply_channel(const ChannelMap& t, const DensityMatrix& rho) {
  if (rho.dim() != t.d1()) throw error("apply_channel: dimension mismatch");
  return DensityMatrix::unchecked(
      apply_choi(t.choi.m, t.d1(), t.d2(), rho.matrix()));
}

CptpReport is_cptp_choi(const ComplexMatrix& c, int d1, int d2, double tol) {
  if (!c.square() || c.rows() != d1 * d2)
    throw error("is_cptp_choi: matrix side must be d1*d2");
  CptpReport r;
  r.herm_residual = max_abs_diff(c, c.adjoint());
  r.hermitian_ok = r.herm_residual <= tol;
  r.min_eig = min_eigenvalue(c);
  r.psd_ok = r.min_eig >= -tol;
  r.trace_residual = std::abs(c.trace() - cplx(1.0, 0.0));
  r.trace_ok = r.trace_residual <= tol;
  ComplexMatrix marg = partial_trace(c, {d1, d2}, 0);
  marg -= (1.0 / d1) * ComplexMatrix::identity(d1);
  r.marginal_residual = marg.max_abs();
  r.marginal_ok = r.marginal_residual <= tol;
  r.valid = r.hermitian_ok && r.psd_ok && r.trace_ok && r.marginal_ok;
  return r;
}

double covariance_residual(const ComplexMatrix& choi, const ComplexMatrix& u,
                           const ComplexMatrix& v) {
  if (choi.rows() != u.rows() * v.rows())
    throw error("covariance_residual: dimension mismatch");
  return trace_norm(commutator(choi, tensor_product(u.conj(), v)));
}

CovarianceReport is_covariant(const ChannelMap& t, const Representation& u,
                              const Representation& v, double tol) {
  if (u.group != v.group) throw error("is_covariant: group mismatch");
  if (t.d1() != u.dim || t.d2() != v.dim)
    throw error("is_covariant: dimension mismatch");
  CovarianceReport r;
  for (size_t g = 0; g < u.mats.size(); ++g)
    r.max_residual = std::max(
        r.max_residual, covariance_residual(t.choi.m, u.mats[g], v.mats[g]));
  r.covariant = r.max_residual <= tol;
  return r;
}

ChannelMap twirl_channel(const ChannelMap& t, const Representation& u,
                         const Representation& v) {
  if (u.group != v.group) throw error("twirl_channel: group mismatch");
  if (t.d1() != u.dim || t.d2() != v.dim)
    throw error("twirl_channel: dimension mismatch");
  const ComplexMatrix c = project_to_commutant(t.choi.m, bar_tensor_rep(u, v));
  return channel_from_choi(c, t.d1(), t.d2());
}

ChannelMap random_covariant_channel(const Representation& u,
                                    const Representation& v, uint64_t seed) {
  if (!is_irreducible(u))
    throw error("random_covariant_channel: u must be irreducible");
  Prng rng(seed);
  const DensityMatrix rho = random_density(u.dim * v.dim, rng);
  const ComplexMatrix c =
      project_to_commutant(rho.matrix(), bar_tensor_rep(u, v));
  return channel_from_choi(c, u.dim, v.dim, 1e-8);
}

DistanceBounds channel_distance_bounds(const ChannelMap& a,
                                       const ChannelMap& b) {
  require_same_shape(a, b, "channel_distance_bounds");
  DistanceBounds d;
  d.lo = 0.5 * trace_norm(a.choi.m - b.choi.m);
  d.hi = a.d1() * d.lo;
  return d;
}

ChannelMap compose_channels(const ChannelMap& after, const ChannelMap& before) {
  if (after.d1() != before.d2())
    throw error("compose_channels: dimension mismatch");
  const int d1 = before.d1();
  const int d3 = after.d2();
  ComplexMatrix c(d1 * d3, d1 * d3);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      const ComplexMatrix out = apply_choi(
          after.choi.m, after.d1(), after.d2(),
          apply_choi(before.choi.m, before.d1(), before.d2(),
                     ComplexMatrix::unit(d1, i, j)));
      for (int a = 0; a < d3; ++a)
        for (int b = 0; b < d3; ++b)
          c(i * d3 + a, j * d3 + b) = out(a, b) / static_cast<double>(d1);
    }
  return channel_from_choi(c, d1, d3);
}

ChannelMap identity_channel(int d) {
  ChannelMap t = channel_from_choi(maximally_entangled_state(d), d, d);
  t.tag = ChannelTag::identity;
  return t;
}

ChannelMap depolarizing_channel(int d, double alpha_hat) {
  const double hi = static_cast<double>(d) * d / (d * d - 1);
  if (alpha_hat < 0.0 || alpha_hat > hi + 1e-12)
    throw error("depolarizing_channel: alpha_hat out of [0, d^2/(d^2-1)]");
  ComplexMatrix c = maximally_entangled_state(d);
  c *= cplx(1.0 - alpha_hat, 0.0);
  const double unif = alpha_hat / (d * d);
  for (int i = 0; i < d * d; ++i) c(i, i) += unif;
  ChannelMap t = channel_from_choi(c, d, d);
  t.tag = ChannelTag::depolarizing;
  t.alpha_hat = alpha_hat;
  return t;
}

ChannelMap werner_holevo_channel(int d) {
  if (d < 2) throw error("werner_holevo_channel: requires d >= 2");
  ComplexMatrix c = ComplexMatrix::identity(d * d) - flip_operator(d);
  c *= cplx(1.0 / (d * (d - 1.0)), 0.0);
  ChannelMap t = channel_from_choi(c, d, d);
  t.tag = ChannelTag::werner_holevo;
  return t;
}

namespace {

A4Algebra build_a4_algebra() {
  // Tetrahedron vertices v_i spanning (1,1,1,1)^perp; the image equations
  // below define the degree-3 unitary V on span{v1, v2, v3}, with the
  // redundant v4 = -(v1+v2+v3) kept as a consistency check.
  ComplexMatrix verts(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) verts(i, j) = (i == j) ? 3.0 : -1.0;
  auto vert = [&](int j) { return verts.block(0, j, 4, 1); };

  const cplx zeta(std::cos(2.0 * M_PI / 3.0), std::sin(2.0 * M_PI / 3.0));
  const cplx zeta2 = zeta * zeta;
  std::vector<ComplexMatrix> image(4, ComplexMatrix(4, 1));
  image[0] = 0.5 * (vert(1) + zeta * vert(2) + zeta2 * vert(3));
  image[1] = 0.5 * (vert(0) + zeta2 * vert(2) + zeta * vert(3));
  image[2] = 0.5 * (zeta * vert(0) + zeta2 * vert(1) + vert(3));
  image[3] = 0.5 * (zeta2 * vert(0) + zeta * vert(1) + vert(2));
  ComplexMatrix redundancy = image[0] + image[1] + image[2] + image[3];
  if (redundancy.max_abs() > 1e-12)
    throw error("a4_algebra: vertex image equations inconsistent");

  // Same span and orthonormalization as the catalog theta, so V and theta
  // are expressed in the same basis.
  const ComplexMatrix span = verts.block(0, 0, 4, 3);
  const ComplexMatrix q = orthonormal_columns(span);
  ComplexMatrix m_in(3, 3), m_out(3, 3);
  {
    const ComplexMatrix qin = q.adjoint() * span;  // upper triangular
    ComplexMatrix w(4, 3);
    for (int j = 0; j < 3; ++j) w.set_block(0, j, image[static_cast<size_t>(j)]);
    const ComplexMatrix qout = q.adjoint() * w;
    // solve V * qin = qout column by column; qin is upper triangular
    for (int col = 0; col < 3; ++col)
      for (int row = 0; row < 3; ++row) m_in(row, col) = qin(row, col);
    ComplexMatrix v(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        cplx s = qout(r, c);
        for (int k = 0; k < c; ++k) s -= v(r, k) * m_in(k, c);
        v(r, c) = s / m_in(c, c);
      }
    }
    m_out = v;
  }
  A4Algebra alg;
  alg.V = m_out;
  if (!alg.V.is_unitary(1e-10)) throw error("a4_algebra: V is not unitary");

  alg.F = flip_operator(3);
  const ComplexMatrix omega = maximally_entangled_state(3);
  const ComplexMatrix iv = tensor_product(ComplexMatrix::identity(3), alg.V);
  alg.P = ComplexMatrix::identity(9);
  alg.P -= omega;
  alg.P -= sandwich(iv, omega);
  alg.P -= sandwich(iv * iv, omega);

  const ComplexMatrix vv = tensor_product(alg.V, alg.V.adjoint());
  const ComplexMatrix two_vv_plus_one =
      2.0 * vv + ComplexMatrix::identity(9);
  const double s3 = std::sqrt(3.0);
  alg.VX = alg.P * alg.F;
  alg.VY = (1.0 / s3) * (alg.P * alg.F * two_vv_plus_one);
  alg.VZ = (cplx(0.0, -1.0) / s3) * (alg.P * two_vv_plus_one);
  return alg;
}

}  // namespace

const A4Algebra& a4_algebra() {
  static const A4Algebra alg = build_a4_algebra();
  return alg;
}

ChannelMap a4_unitary_channel(int j) {
  if (j < 0 || j > 2) throw error("a4_unitary_channel: j must be 0, 1 or 2");
  const A4Algebra& alg = a4_algebra();
  ComplexMatrix vj = ComplexMatrix::identity(3);
  for (int t = 0; t < j; ++t) vj = vj * alg.V;
  const ComplexMatrix c = sandwich(
      tensor_product(ComplexMatrix::identity(3), vj), maximally_entangled_state(3));
  ChannelMap t = channel_from_choi(c, 3, 3);
  t.tag = ChannelTag::a4_unitary;
  t.power = j;
  return t;
}

ChannelMap a4_bloch_channel(const std::array<double, 3>& lambda) {
  const double norm2 =
      lambda[0] * lambda[0] + lambda[1] * lambda[1] + lambda[2] * lambda[2];
  if (norm2 > 1.0 + 1e-12)
    throw error("a4_bloch_channel: |lambda| must be <= 1");
  const A4Algebra& alg = a4_algebra();
  ComplexMatrix c = alg.P;
  c += lambda[0] * alg.VX;
  c += lambda[1] * alg.VY;
  c += lambda[2] * alg.VZ;
  c *= cplx(1.0 / 6.0, 0.0);
  ChannelMap t = channel_from_choi(c, 3, 3);
  t.tag = ChannelTag::a4_bloch;
  t.lambda = lambda;
  return t;
}

ChannelMap catalog_channel(const std::string& tag, const ChannelParams& p) {
  if (tag == "identity") return identity_channel(p.d);
  if (tag == "depolarizing") return depolarizing_channel(p.d, p.alpha_hat);
  if (tag == "werner_holevo") return werner_holevo_channel(p.d);
  if (tag == "a4_unitary") return a4_unitary_channel(p.j);
  if (tag == "a4_bloch") return a4_bloch_channel(p.lambda);
  throw error("catalog_channel: unknown tag " + tag);
}

}  // namespace covproc

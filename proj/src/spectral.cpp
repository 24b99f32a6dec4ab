#include "covproc/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace covproc {

namespace {

using EMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>;

Eigen::Map<const EMat> emap(const ComplexMatrix& m) {
  return Eigen::Map<const EMat>(m.data(), m.rows(), m.cols());
}

ComplexMatrix from_eigen(const EMat& e) {
  ComplexMatrix m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace

HermitianEig eigh(const ComplexMatrix& x) {
  if (!x.square()) throw error("eigh: matrix not square");
  EMat h = emap(x);
  h = (h + h.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<EMat> es(h);
  if (es.info() != Eigen::Success) throw error("eigh: eigensolver failed");
  HermitianEig out;
  out.values.assign(es.eigenvalues().data(),
                    es.eigenvalues().data() + x.rows());
  out.vectors = from_eigen(es.eigenvectors());
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& x) {
  Eigen::JacobiSVD<EMat> svd(emap(x));
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + svd.singularValues().size());
  return s;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  HermitianEig e = eigh(hermitian);
  return e.values.empty() ? 0.0 : e.values.front();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& hermitian, double tol) {
  HermitianEig e = eigh(hermitian);
  const int n = hermitian.rows();
  ComplexMatrix d(n, n);
  for (int i = 0; i < n; ++i) {
    double v = e.values[i];
    if (v < -tol) throw error("psd_sqrt: eigenvalue below -tol");
    d(i, i) = std::sqrt(std::max(v, 0.0));
  }
  return e.vectors * d * e.vectors.adjoint();
}

int numerical_rank(const ComplexMatrix& x, double rel_tol) {
  std::vector<double> s = singular_values(x);
  if (s.empty() || s.front() == 0.0) return 0;
  int r = 0;
  for (double v : s)
    if (v > rel_tol * s.front()) ++r;
  return r;
}

double trace_norm(const ComplexMatrix& x) {
  if (!x.square()) throw error("trace_norm: matrix not square");
  // Hermitian inputs (the common case here) get the more accurate eigenvalue
  // route; general matrices go through the SVD.
  if (x.is_hermitian(1e-13)) {
    HermitianEig e = eigh(x);
    double s = 0.0;
    for (double v : e.values) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : singular_values(x)) s += v;
  return s;
}

DensityMatrix DensityMatrix::checked(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw error("density matrix must be square");
  if (!m.is_hermitian(tol)) throw error("density matrix not Hermitian within tol");
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > tol)
    throw error("density matrix trace != 1 within tol");
  if (min_eigenvalue(m) < -tol)
    throw error("density matrix has eigenvalue below -tol");
  return DensityMatrix::unchecked(m);
}

double von_neumann_entropy(const DensityMatrix& rho, double tol) {
  HermitianEig e = eigh(rho.matrix());
  return entropy_of_spectrum(e.values, tol);
}

}  // namespace covproc

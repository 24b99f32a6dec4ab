#include "covproc/matrix.hpp"

#include <cmath>

namespace covproc {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<cplx>& d) {
  ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(int n, int i, int j) {
  ComplexMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("shape mismatch in +=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw error("shape mismatch in -=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
  return m;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw error("trace of non-square matrix");
  cplx t(0.0, 0.0);
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

ComplexMatrix ComplexMatrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
    throw error("block out of range");
  ComplexMatrix m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void ComplexMatrix::set_block(int r0, int c0, const ComplexMatrix& m) {
  if (r0 < 0 || c0 < 0 || r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
    throw error("set_block out of range");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!square()) return false;
  ComplexMatrix g = adjoint() * (*this);
  for (int i = 0; i < rows_; ++i) g(i, i) -= 1.0;
  return g.max_abs() <= tol;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c = a;
  c += b;
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c = a;
  c -= b;
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw error("shape mismatch in matmul");
  ComplexMatrix c(a.rows(), b.cols());
  kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix c = a;
  c *= s;
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, cplx s) { return s * a; }

ComplexMatrix sandwich(const ComplexMatrix& u, const ComplexMatrix& x) {
  return u * x * u.adjoint();
}

ComplexMatrix orthonormal_columns(const ComplexMatrix& m) {
  ComplexMatrix q = m;
  for (int j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        cplx ip(0.0, 0.0);
        for (int i = 0; i < q.rows(); ++i) ip += std::conj(q(i, k)) * q(i, j);
        for (int i = 0; i < q.rows(); ++i) q(i, j) -= ip * q(i, k);
      }
    double nrm = 0.0;
    for (int i = 0; i < q.rows(); ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw error("orthonormal_columns: rank deficient input");
    for (int i = 0; i < q.rows(); ++i) q(i, j) /= nrm;
  }
  return q;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw error("shape mismatch in max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= tol;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  kernels::kron(a.data(), a.rows(), a.cols(), b.data(), b.rows(), b.cols(),
                out.data());
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, std::pair<int, int> dims,
                            int keep) {
  const int da = dims.first, db = dims.second;
  if (!x.square() || x.rows() != da * db)
    throw error("partial_trace: dimension mismatch");
  if (keep != 0 && keep != 1) throw error("partial_trace: keep must be 0 or 1");
  const int dk = (keep == 0) ? da : db;
  ComplexMatrix out(dk, dk);
  kernels::partial_trace(x.data(), da, db, keep, out.data());
  return out;
}

ComplexMatrix maximally_entangled_ket(int d) {
  if (d < 1) throw error("maximally_entangled_ket: d must be >= 1");
  ComplexMatrix v(d * d, 1);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i, 0) = a;
  return v;
}

ComplexMatrix maximally_entangled_state(int d) {
  ComplexMatrix v = maximally_entangled_ket(d);
  return v * v.adjoint();
}

double entropy_of_spectrum(const std::vector<double>& p, double tol) {
  double s = 0.0;
  for (double x : p) {
    if (x < -tol) throw error("entropy: eigenvalue below -tol");
    if (x <= 0.0) continue;  // clamp [-tol, 0) and skip exact zeros
    s -= x * std::log2(x);
  }
  return s;
}

}  // namespace covproc

// Dense complex matrices in row-major order plus the handful of operations
// the rest of the library is built from: Kronecker products, partial traces,
// trace norm, von Neumann entropy, and the usual predicates.
//
// Conventions used throughout the project:
//   * bipartite spaces are ordered (factor A, factor B); index = iA*dB + iB
//   * |Omega> = 1/sqrt(d) sum_i |i>|i> lives on A (x) B with dA = dB = d
//   * entropies and all derived information quantities are in bits (log base 2)
#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "covproc/kernels.hpp"

namespace covproc {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw error("negative matrix dimension");
  }
  ComplexMatrix(int rows, int cols, std::initializer_list<cplx> entries)
      : ComplexMatrix(rows, cols) {
    if (static_cast<int>(entries.size()) != rows * cols)
      throw error("initializer size mismatch");
    size_t k = 0;
    for (const cplx& v : entries) a_[k++] = v;
  }

  static ComplexMatrix zero(int rows, int cols) {
    return ComplexMatrix(rows, cols);
  }
  static ComplexMatrix identity(int n);
  static ComplexMatrix diag(const std::vector<cplx>& d);
  // single unit entry at (i, j)
  static ComplexMatrix unit(int n, int i, int j);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  size_t size() const { return a_.size(); }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const ComplexMatrix& m);

  bool is_hermitian(double tol = kDefaultTol) const;
  bool is_unitary(double tol = kDefaultTol) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, cplx s);

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

// U X U^dagger
ComplexMatrix sandwich(const ComplexMatrix& u, const ComplexMatrix& x);

// Modified Gram-Schmidt with a re-orthogonalization pass; throws when the
// columns are numerically rank deficient.
ComplexMatrix orthonormal_columns(const ComplexMatrix& m);

// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kDefaultTol);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// dims = {dA, dB}; keep = 0 keeps A (traces out B), keep = 1 keeps B.
ComplexMatrix partial_trace(const ComplexMatrix& x, std::pair<int, int> dims,
                            int keep);

// |Omega> as a d^2 x 1 column vector.
ComplexMatrix maximally_entangled_ket(int d);
// |Omega><Omega| as a d^2 x d^2 density matrix.
ComplexMatrix maximally_entangled_state(int d);

// Sum of singular values.
double trace_norm(const ComplexMatrix& x);

class DensityMatrix {
 public:
  // Validates: Hermitian within tol, eigenvalues >= -tol, trace within tol of 1.
  static DensityMatrix checked(const ComplexMatrix& m, double tol = kDefaultTol);
  // Skips validation; for matrices produced by operations that preserve
  // density-matrix structure by construction.
  static DensityMatrix unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

  int dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// -sum lambda_i log2 lambda_i. Eigenvalues in [-tol, 0) are clamped to zero;
// anything below -tol is an error.
double von_neumann_entropy(const DensityMatrix& rho, double tol = kDefaultTol);
double entropy_of_spectrum(const std::vector<double>& p, double tol = kDefaultTol);

}  // namespace covproc

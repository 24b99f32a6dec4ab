// Spectral routines (Hermitian eigendecomposition, singular values, PSD
// square root). Backed by Eigen; this header keeps Eigen out of the rest of
// the project.
#pragma once

#include <vector>

#include "covproc/matrix.hpp"

namespace covproc {

struct HermitianEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors, same order
};

// Eigendecomposition of (x + x^dagger)/2; callers pass Hermitian input.
HermitianEig eigh(const ComplexMatrix& x);

// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& x);

double min_eigenvalue(const ComplexMatrix& hermitian);

// Square root of a PSD matrix; eigenvalues in [-tol, 0) are clamped to 0.
ComplexMatrix psd_sqrt(const ComplexMatrix& hermitian, double tol = kDefaultTol);

// Number of singular values > rel_tol * s_max (0 for the zero matrix).
int numerical_rank(const ComplexMatrix& x, double rel_tol = 1e-7);

}  // namespace covproc

// Nonnegative least squares (Lawson-Hanson active set), used to decompose a
// Choi state over a list of extreme points.
#pragma once

#include <vector>

namespace covproc {

struct NnlsResult {
  std::vector<double> x;  // >= 0 entrywise
  double residual = 0.0;  // ||A x - b||_2
};

// columns[k] is the k-th column of A; all columns and b have equal length.
NnlsResult nnls(const std::vector<std::vector<double>>& columns,
                const std::vector<double>& b);

}  // namespace covproc

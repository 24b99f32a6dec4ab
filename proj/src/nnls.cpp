#include "covproc/nnls.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace covproc {

NnlsResult nnls(const std::vector<std::vector<double>>& columns,
                const std::vector<double>& b) {
  const int k = static_cast<int>(columns.size());
  if (k == 0) throw std::invalid_argument("nnls: no columns");
  const int m = static_cast<int>(b.size());
  Eigen::MatrixXd a(m, k);
  for (int j = 0; j < k; ++j) {
    if (static_cast<int>(columns[static_cast<size_t>(j)].size()) != m)
      throw std::invalid_argument("nnls: column length mismatch");
    for (int i = 0; i < m; ++i) a(i, j) = columns[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), m);

  std::vector<bool> passive(k, false);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  const double tol = 1e-12 * std::max(1.0, bv.norm()) * std::max(1.0, a.norm());

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<int> idx;
    for (int j = 0; j < k; ++j)
      if (passive[static_cast<size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd ap(m, static_cast<int>(idx.size()));
    for (size_t t = 0; t < idx.size(); ++t) ap.col(static_cast<int>(t)) = a.col(idx[t]);
    Eigen::VectorXd zp =
        ap.colPivHouseholderQr().solve(bv);
    z = Eigen::VectorXd::Zero(k);
    for (size_t t = 0; t < idx.size(); ++t) z(idx[t]) = zp(static_cast<int>(t));
  };

  for (int outer = 0; outer < 3 * k + 10; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (bv - a * x);
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < k; ++j)
      if (!passive[static_cast<size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<size_t>(best)] = true;

    for (int inner = 0; inner < 3 * k + 10; ++inner) {
      Eigen::VectorXd z;
      solve_passive(z);
      bool feasible = true;
      for (int j = 0; j < k; ++j)
        if (passive[static_cast<size_t>(j)] && z(j) <= 0.0) feasible = false;
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (int j = 0; j < k; ++j)
        if (passive[static_cast<size_t>(j)] && z(j) <= 0.0)
          alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      x += alpha * (z - x);
      for (int j = 0; j < k; ++j)
        if (passive[static_cast<size_t>(j)] && x(j) <= tol) {
          passive[static_cast<size_t>(j)] = false;
          x(j) = 0.0;
        }
    }
  }

  NnlsResult res;
  res.x.assign(x.data(), x.data() + k);
  for (double& v : res.x)
    if (v < 0.0) v = 0.0;
  res.residual = (a * x - bv).norm();
  return res;
}

}  // namespace covproc

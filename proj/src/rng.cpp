#include "covproc/rng.hpp"

#include <cmath>

namespace covproc {

double Prng::uniform() {
  // 53 random bits into [0, 1)
  return (eng_() >> 11) * 0x1.0p-53;
}

double Prng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

ComplexMatrix random_ginibre(int n, Prng& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.cgaussian();
  return g;
}

DensityMatrix random_density(int n, Prng& rng) {
  ComplexMatrix g = random_ginibre(n, rng);
  ComplexMatrix w = g * g.adjoint();
  w *= cplx(1.0 / w.trace().real(), 0.0);
  return DensityMatrix::unchecked(w);
}

ComplexMatrix random_hermitian(int n, Prng& rng) {
  ComplexMatrix g = random_ginibre(n, rng);
  ComplexMatrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = (g(i, j) + std::conj(g(j, i))) / 2.0;
  return h;
}

ComplexMatrix random_unitary(int n, Prng& rng) {
  return orthonormal_columns(random_ginibre(n, rng));
}

ComplexMatrix random_special_unitary(int n, Prng& rng) {
  ComplexMatrix u = random_unitary(n, rng);
  // det via LU-free expansion is overkill; for the small n used here,
  // accumulate the determinant from a copy reduced by Gaussian elimination.
  ComplexMatrix a = u;
  cplx det(1.0, 0.0);
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(p, j));
      det = -det;
    }
    det *= a(c, c);
    if (a(c, c) == cplx(0.0, 0.0)) break;
    for (int r = c + 1; r < n; ++r) {
      const cplx f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  const cplx phase = std::pow(det, cplx(-1.0 / n, 0.0));
  return phase * u;
}

}  // namespace covproc

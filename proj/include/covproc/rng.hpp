// Seeded sampling for verification sweeps. Gaussians use an explicit
// Box-Muller transform over mt19937_64 output so sampled matrices are
// reproducible across standard libraries, not just across runs.
#pragma once

#include <cstdint>
#include <random>

#include "covproc/matrix.hpp"

namespace covproc {

class Prng {
 public:
  explicit Prng(uint64_t seed) : eng_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  cplx cgaussian() { double re = gaussian(); return cplx(re, gaussian()); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// n x n with iid standard complex Gaussian entries.
ComplexMatrix random_ginibre(int n, Prng& rng);
// Normalized Wishart state G G^dagger / tr(G G^dagger).
DensityMatrix random_density(int n, Prng& rng);
ComplexMatrix random_hermitian(int n, Prng& rng);
// Haar-ish unitary via Gram-Schmidt on a Ginibre sample.
ComplexMatrix random_unitary(int n, Prng& rng);
// Determinant-one version of the above.
ComplexMatrix random_special_unitary(int n, Prng& rng);

}  // namespace covproc

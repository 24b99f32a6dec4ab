#pragma once

#include <doctest.h>

#include <vector>

#include "covproc/matrix.hpp"
#include "covproc/rng.hpp"

namespace covproc::testutil {

inline ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1, 0, 0, -1}); }

inline std::vector<DensityMatrix> random_states(int dim, int count,
                                                uint64_t seed) {
  std::vector<DensityMatrix> out;
  for (int i = 0; i < count; ++i) {
    Prng rng(seed + static_cast<uint64_t>(i));
    out.push_back(random_density(dim, rng));
  }
  return out;
}

}  // namespace covproc::testutil

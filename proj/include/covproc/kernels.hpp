// Low-level dense complex kernels. Every kernel has a serial reference path
// and an OpenMP path that produce bit-identical results: parallelism is only
// over independent output rows / summands, and every reduction runs in a
// fixed index order regardless of thread count.
#pragma once

#include <complex>

namespace covproc {

using cplx = std::complex<double>;

// Global numeric defaults. Equality checks use kDefaultTol, integer
// rounding (irrep multiplicities) uses kRoundTol. Both overridable per call.
inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kRoundTol = 1e-6;

namespace kernels {

enum class Exec {
  Serial,    // reference path, single thread
  Parallel,  // force OpenMP path
  Auto,      // parallel when the work size warrants it
};

Exec default_exec();
void set_default_exec(Exec mode);

// Reads COVPROC_EXEC=serial|parallel|auto; returns Auto when unset.
Exec exec_from_env();

// c(m x n) = a(m x k) * b(k x n), all row-major. c must not alias a or b.
void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n,
            Exec mode = Exec::Auto);

// out = a (ra x ca) \otimes b (rb x cb), row-major.
void kron(const cplx* a, int ra, int ca, const cplx* b, int rb, int cb,
          cplx* out, Exec mode = Exec::Auto);

// x is (da*db) x (da*db) over factors A (dim da) and B (dim db).
// keep = 0 traces out B, keep = 1 traces out A.
void partial_trace(const cplx* x, int da, int db, int keep, cplx* out,
                   Exec mode = Exec::Auto);

// out = sum_g w[g] * U[g] * x * U[g]^dagger with U[g] n x n unitaries.
// Terms are accumulated in index order g = 0,1,... for bit reproducibility.
void sandwich_sum(const cplx* const* u, const double* w, int count,
                  const cplx* x, cplx* out, int n, Exec mode = Exec::Auto);

}  // namespace kernels
}  // namespace covproc

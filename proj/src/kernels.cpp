#include "covproc/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace covproc::kernels {

namespace {

Exec g_default = Exec::Auto;

bool can_parallelize() {
#ifdef _OPENMP
  return omp_get_max_threads() > 1 && !omp_in_parallel();
#else
  return false;
#endif
}

bool go_parallel(Exec mode, long work, long threshold) {
  if (mode == Exec::Serial) return false;
  if (!can_parallelize()) return false;
  if (mode == Exec::Parallel) return true;
  Exec d = g_default;
  if (d == Exec::Serial) return false;
  if (d == Exec::Parallel) return true;
  return work >= threshold;
}

// One output row of c = a * b, accumulated in k order. Shared by both paths
// so serial and parallel results are bitwise identical.
inline void matmul_row(const cplx* a, const cplx* b, cplx* c, int i, int k,
                       int n) {
  cplx* crow = c + static_cast<size_t>(i) * n;
  for (int j = 0; j < n; ++j) crow[j] = cplx(0.0, 0.0);
  const cplx* arow = a + static_cast<size_t>(i) * k;
  for (int l = 0; l < k; ++l) {
    const cplx av = arow[l];
    if (av == cplx(0.0, 0.0)) continue;
    const cplx* brow = b + static_cast<size_t>(l) * n;
    for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
  }
}

inline void kron_row(const cplx* a, int ca, const cplx* b, int rb, int cb,
                     cplx* out, int row, int ncols) {
  const int ia = row / rb;
  const int ib = row % rb;
  cplx* orow = out + static_cast<size_t>(row) * ncols;
  const cplx* arow = a + static_cast<size_t>(ia) * ca;
  const cplx* brow = b + static_cast<size_t>(ib) * cb;
  for (int ja = 0; ja < ca; ++ja)
    for (int jb = 0; jb < cb; ++jb) orow[ja * cb + jb] = arow[ja] * brow[jb];
}

}  // namespace

Exec default_exec() { return g_default; }
void set_default_exec(Exec mode) { g_default = mode; }

Exec exec_from_env() {
  const char* v = std::getenv("COVPROC_EXEC");
  if (!v) return Exec::Auto;
  std::string s(v);
  if (s == "serial") return Exec::Serial;
  if (s == "parallel") return Exec::Parallel;
  return Exec::Auto;
}

void matmul(const cplx* a, const cplx* b, cplx* c, int m, int k, int n,
            Exec mode) {
  const long work = static_cast<long>(m) * k * n;
  if (go_parallel(mode, work, 1L << 15)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n);
  } else {
    for (int i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n);
  }
}

void kron(const cplx* a, int ra, int ca, const cplx* b, int rb, int cb,
          cplx* out, Exec mode) {
  const int rows = ra * rb;
  const int cols = ca * cb;
  const long work = static_cast<long>(rows) * cols;
  if (go_parallel(mode, work, 1L << 16)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < rows; ++r) kron_row(a, ca, b, rb, cb, out, r, cols);
  } else {
    for (int r = 0; r < rows; ++r) kron_row(a, ca, b, rb, cb, out, r, cols);
  }
}

void partial_trace(const cplx* x, int da, int db, int keep, cplx* out,
                   Exec mode) {
  const int n = da * db;
  const int dk = (keep == 0) ? da : db;
  const int dt = (keep == 0) ? db : da;
  const long work = static_cast<long>(dk) * dk * dt;
  auto entry = [&](int i, int j) {
    cplx s(0.0, 0.0);
    if (keep == 0) {
      for (int t = 0; t < dt; ++t)
        s += x[static_cast<size_t>(i * db + t) * n + (j * db + t)];
    } else {
      for (int t = 0; t < dt; ++t)
        s += x[static_cast<size_t>(t * db + i) * n + (t * db + j)];
    }
    out[static_cast<size_t>(i) * dk + j] = s;
  };
  if (go_parallel(mode, work, 1L << 15)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j) entry(i, j);
  } else {
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j) entry(i, j);
  }
}

void sandwich_sum(const cplx* const* u, const double* w, int count,
                  const cplx* x, cplx* out, int n, Exec mode) {
  const size_t nn = static_cast<size_t>(n) * n;
  const long work = static_cast<long>(count) * n * n * n;
  std::vector<cplx> terms(static_cast<size_t>(count) * nn);
  std::vector<cplx> scratch;

  auto term = [&](int g, cplx* tmp) {
    // tmp = U_g * x, term_g = tmp * U_g^dagger (adjoint expanded inline)
    matmul(u[g], x, tmp, n, n, n, Exec::Serial);
    cplx* tg = terms.data() + static_cast<size_t>(g) * nn;
    for (int i = 0; i < n; ++i) {
      const cplx* trow = tmp + static_cast<size_t>(i) * n;
      cplx* orow = tg + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        cplx s(0.0, 0.0);
        const cplx* urow = u[g] + static_cast<size_t>(j) * n;
        for (int l = 0; l < n; ++l) s += trow[l] * std::conj(urow[l]);
        orow[j] = s;
      }
    }
  };

  if (go_parallel(mode, work, 1L << 15) && count > 1) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<cplx> tmp(nn);
#pragma omp for schedule(static)
      for (int g = 0; g < count; ++g) term(g, tmp.data());
    }
#endif
  } else {
    scratch.resize(nn);
    for (int g = 0; g < count; ++g) term(g, scratch.data());
  }

  // fixed-order reduction
  for (size_t e = 0; e < nn; ++e) out[e] = cplx(0.0, 0.0);
  for (int g = 0; g < count; ++g) {
    const cplx* tg = terms.data() + static_cast<size_t>(g) * nn;
    for (size_t e = 0; e < nn; ++e) out[e] += w[g] * tg[e];
  }
}

}  // namespace covproc::kernels

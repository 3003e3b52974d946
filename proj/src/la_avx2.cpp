// AVX2 kernel lane. Compiled with -mavx2 -ffp-contract=off: axpy and scal
// must perform exactly one mul and one add rounding per element, like the
// scalar lane, so the two lanes agree bitwise on those kernels. dot and
// matvec reassociate the reduction and agree only to rounding.

#ifdef GAMEDYN_X86_64

#include <immintrin.h>

#include "gamedyn/la.hpp"

namespace gamedyn::la {
namespace {

double reduce_add(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* x, const double* y, int n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  double s = reduce_add(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, int n) {
  const __m256d va = _mm256_set1_pd(a);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(double a, double* x, int n) {
  const __m256d va = _mm256_set1_pd(a);
  int i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  for (; i < n; ++i) x[i] *= a;
}

void matvec_avx2(const Mat& m, const double* x, double* y) {
  for (int i = 0; i < m.rows; ++i) y[i] = dot_avx2(m.row(i), x, m.cols);
}

void matvec_t_avx2(const Mat& m, const double* x, double* y) {
  for (int j = 0; j < m.cols; ++j) y[j] = 0.0;
  for (int i = 0; i < m.rows; ++i) axpy_avx2(x[i], m.row(i), y, m.cols);
}

const KernelTable kAvx2{dot_avx2, axpy_avx2, scal_avx2, matvec_avx2, matvec_t_avx2};

}  // namespace

namespace detail {

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

const KernelTable& avx2_kernels() { return kAvx2; }

}  // namespace detail
}  // namespace gamedyn::la

#endif  // GAMEDYN_X86_64

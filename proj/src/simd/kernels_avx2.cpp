// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include <immintrin.h>

#include "psiac/simd/kernels.hpp"

namespace psiac::simd::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void vecmat(std::span<const double> v, std::span<const double> a, std::span<double> out) {
  const std::size_t cols = out.size();
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const __m256d vi = _mm256_set1_pd(v[i]);
    const double* row = a.data() + i * cols;
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      _mm256_storeu_pd(out.data() + j,
                       _mm256_fmadd_pd(vi, _mm256_loadu_pd(row + j), _mm256_loadu_pd(out.data() + j)));
    }
    for (; j < cols; ++j) out[j] += v[i] * row[j];
  }
}

void horner_batch(std::span<const double> coeffs, double shift, double scale,
                  std::span<const double> xs, std::span<double> out) {
  const std::size_t n = xs.size();
  const __m256d vshift = _mm256_set1_pd(shift);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(xs.data() + i), vshift), vscale);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t l = coeffs.size(); l-- > 0;) {
      acc = _mm256_fmadd_pd(acc, y, _mm256_set1_pd(coeffs[l]));
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  if (i < n) {
    scalar::horner_batch(coeffs, shift, scale, xs.subspan(i), out.subspan(i));
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y.data() + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace psiac::simd::avx2

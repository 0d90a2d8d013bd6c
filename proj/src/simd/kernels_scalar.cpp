#include "psiac/simd/kernels.hpp"

namespace psiac::simd::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void vecmat(std::span<const double> v, std::span<const double> a, std::span<double> out) {
  const std::size_t cols = out.size();
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vi = v[i];
    const double* row = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] += vi * row[j];
  }
}

void horner_batch(std::span<const double> coeffs, double shift, double scale,
                  std::span<const double> xs, std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = (xs[i] - shift) * scale;
    double acc = 0.0;
    for (std::size_t l = coeffs.size(); l-- > 0;) acc = acc * y + coeffs[l];
    out[i] = acc;
  }
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace psiac::simd::scalar

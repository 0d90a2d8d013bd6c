#pragma once

// Double-precision inner loops of the filtering and time-stepping paths.
// Each kernel has a scalar reference and an AVX2/FMA variant; the variant is
// chosen once at startup from the CPU's feature bits and can be overridden
// for testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace psiac::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

/// True when the binary carries the AVX2 variant and the CPU supports it.
bool avx2_available();
Backend active_backend();
/// Throws std::runtime_error when the backend is unavailable.
void set_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);

/// out = v^T A for row-major A with v.size() rows and out.size() columns.
void vecmat(std::span<const double> v, std::span<const double> a, std::span<double> out);

/// out[i] = sum_l coeffs[l] * ((xs[i] - shift) * scale)^l, Horner order.
void horner_batch(std::span<const double> coeffs, double shift, double scale,
                  std::span<const double> xs, std::span<double> out);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Direct access to each variant, for equivalence tests.
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void vecmat(std::span<const double> v, std::span<const double> a, std::span<double> out);
void horner_batch(std::span<const double> coeffs, double shift, double scale,
                  std::span<const double> xs, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(PSIAC_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void vecmat(std::span<const double> v, std::span<const double> a, std::span<double> out);
void horner_batch(std::span<const double> coeffs, double shift, double scale,
                  std::span<const double> xs, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace psiac::simd

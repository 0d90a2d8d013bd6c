#include <atomic>
#include <stdexcept>

#include "psiac/simd/kernels.hpp"

namespace psiac::simd {

namespace {

struct Table {
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*vecmat)(std::span<const double>, std::span<const double>, std::span<double>);
  void (*horner_batch)(std::span<const double>, double, double, std::span<const double>, std::span<double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
};

constexpr Table kScalar{scalar::dot, scalar::vecmat, scalar::horner_batch, scalar::axpy};
#if defined(PSIAC_HAVE_AVX2)
constexpr Table kAvx2{avx2::dot, avx2::vecmat, avx2::horner_batch, avx2::axpy};
#endif

bool detect_avx2() {
#if defined(PSIAC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const Table*>& current() {
#if defined(PSIAC_HAVE_AVX2)
  static std::atomic<const Table*> table{detect_avx2() ? &kAvx2 : &kScalar};
#else
  static std::atomic<const Table*> table{&kScalar};
#endif
  return table;
}

const Table& t() { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
  static const bool ok = detect_avx2();
  return ok;
}

Backend active_backend() {
  return &t() == &kScalar ? Backend::Scalar : Backend::Avx2;
}

void set_backend(Backend b) {
  if (b == Backend::Scalar) {
    current().store(&kScalar);
    return;
  }
#if defined(PSIAC_HAVE_AVX2)
  if (avx2_available()) {
    current().store(&kAvx2);
    return;
  }
#endif
  throw std::runtime_error("simd: AVX2 backend not available on this machine");
}

double dot(std::span<const double> a, std::span<const double> b) { return t().dot(a, b); }

void vecmat(std::span<const double> v, std::span<const double> a, std::span<double> out) {
  t().vecmat(v, a, out);
}

void horner_batch(std::span<const double> coeffs, double shift, double scale,
                  std::span<const double> xs, std::span<double> out) {
  t().horner_batch(coeffs, shift, scale, xs, out);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) { t().axpy(alpha, x, y); }

}  // namespace psiac::simd

#include "psiac/legacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psiac/errors.hpp"
#include "psiac/quadrature.hpp"

namespace psiac {

double bspline_eval_double(double x, std::span<const double> knots) {
  const std::size_t m = knots.size();
  if (m < 2) throw std::invalid_argument("bspline_eval_double: need at least two knots");
  const std::size_t k = m - 2;
  if (x < knots.front() || x >= knots.back()) return 0.0;
  std::vector<double> n(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) n[i] = (knots[i] <= x && x < knots[i + 1]) ? 1.0 : 0.0;
  for (std::size_t p = 1; p <= k; ++p) {
    for (std::size_t i = 0; i + p + 1 < m; ++i) {
      double v = 0.0;
      const double dl = knots[i + p] - knots[i];
      const double dr = knots[i + p + 1] - knots[i + 1];
      if (dl > 0.0) v += (x - knots[i]) / dl * n[i];
      if (dr > 0.0) v += (knots[i + p + 1] - x) / dr * n[i + 1];
      n[i] = v;
    }
  }
  return static_cast<double>(k + 1) / (knots.back() - knots.front()) * n[0];
}

LegacySystem legacy_system(const FilterSpec& spec, const Mesh& mesh, double x) {
  // Kernel coordinates in units of h, as in the classical construction:
  // knots t + xi with xi = x/h - lambda, or t alone for a centred kernel.
  const double xi = spec.side() == Side::Symmetric
                        ? 0.0
                        : x / mesh.h_d() - boundary_lambda(spec, mesh.a(), mesh.b(), mesh.h()).to_double();
  const int r = spec.reproduction_degree();
  const auto n = static_cast<std::size_t>(r) + 1;
  const QuadratureRule& q = gauss_legendre_cached(spec.kernel_degree() + spec.dg_degree() + 2);

  LegacySystem sys;
  sys.size = n;
  sys.A.assign(n * n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    const KnotVector w = spec.window(spec.index_set()[col]);
    std::vector<double> knots;
    for (std::size_t i = 0; i < w.size(); ++i) knots.push_back(w[i].to_double() + xi);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double lo = knots[i];
      const double hi = knots[i + 1];
      if (!(hi > lo)) continue;
      for (std::size_t g = 0; g < q.nodes.size(); ++g) {
        const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * q.nodes[g];
        const double bw = 0.5 * (hi - lo) * q.weights[g] * bspline_eval_double(t, knots);
        double tp = 1.0;
        for (std::size_t delta = 0; delta < n; ++delta) {
          sys.A[delta * n + col] += bw * tp;
          tp *= t;
        }
      }
    }
    sys.windows.push_back(std::move(knots));
  }
  return sys;
}

void lu_solve(std::vector<double> a, std::size_t n, std::vector<double>& b, std::size_t nrhs) {
  if (a.size() != n * n || b.size() != n * nrhs) throw std::invalid_argument("lu_solve: size mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a[i * n + col]) > std::abs(a[piv * n + col])) piv = i;
    if (a[piv * n + col] == 0.0) throw SingularMatrix("lu_solve: zero pivot");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[piv * n + j]);
      for (std::size_t j = 0; j < nrhs; ++j) std::swap(b[col * nrhs + j], b[piv * nrhs + j]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a[i * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i * n + j] -= f * a[col * n + j];
      for (std::size_t j = 0; j < nrhs; ++j) b[i * nrhs + j] -= f * b[col * nrhs + j];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = 0; j < nrhs; ++j) {
      double s = b[i * nrhs + j];
      for (std::size_t l = i + 1; l < n; ++l) s -= a[i * n + l] * b[l * nrhs + j];
      b[i * nrhs + j] = s / a[i * n + i];
    }
  }
}

namespace {

double norm1(std::span<const double> a, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i * n + j]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double condition_1norm(std::span<const double> a, std::size_t n) {
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  lu_solve(std::vector<double>(a.begin(), a.end()), n, inv, n);
  return norm1(a, n) * norm1(inv, n);
}

double condition_estimate(const FilterSpec& spec, const Mesh& mesh, double x) {
  const LegacySystem sys = legacy_system(spec, mesh, x);
  return condition_1norm(sys.A, sys.size);
}

double numeric_filter_point(const FilterSpec& spec, const DGField<double>& u, double x) {
  const Mesh& mesh = u.mesh;
  const LegacySystem sys = legacy_system(spec, mesh, x);
  const std::size_t n = sys.size;
  // Moments of the kernel: 1 for delta = 0, else 0.
  std::vector<double> c(n, 0.0);
  c[0] = 1.0;
  lu_solve(sys.A, n, c);

  const QuadratureRule& q = gauss_legendre_cached(spec.kernel_degree() + u.degree + 2);
  const double h = mesh.h_d();
  const double slack = 1e-12 * h;
  double value = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    const std::vector<double>& knots = sys.windows[col];
    // Data point s = x - h t.
    if (x - h * knots.back() < mesh.a_d() - slack || x - h * knots.front() > mesh.b_d() + slack) {
      throw OutOfRegion("numeric_filter_point: kernel at x = " + std::to_string(x) + " leaves the domain");
    }
    std::vector<double> bp(knots.begin(), knots.end());
    for (std::size_t cell = 0; cell <= mesh.cells(); ++cell) {
      const double t = (x - (mesh.a_d() + h * static_cast<double>(cell))) / h;
      if (t > knots.front() && t < knots.back()) bp.push_back(t);
    }
    std::sort(bp.begin(), bp.end());
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const double lo = bp[i];
      const double hi = bp[i + 1];
      if (!(hi > lo)) continue;
      for (std::size_t g = 0; g < q.nodes.size(); ++g) {
        const double t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * q.nodes[g];
        integral += 0.5 * (hi - lo) * q.weights[g] * bspline_eval_double(t, knots) * eval(u, x - h * t);
      }
    }
    value += c[col] * integral;
  }
  return value;
}

std::vector<double> legacy_sample(const DGField<double>& u, const FilterSpec& left, const FilterSpec& right,
                                  std::span<const double> offsets) {
  const FilterSpec sym = filter_catalog(FilterFamily::Symmetric, u.degree, Side::Symmetric);
  const double mu = symmetric_half_width(u.degree).to_double();
  const std::size_t cells = u.mesh.cells();
  std::vector<double> out;
  out.reserve(cells * offsets.size());
  for (std::size_t c = 0; c < cells; ++c) {
    for (double theta : offsets) {
      const double pos = static_cast<double>(c) + theta;
      const double x = u.mesh.a_d() + u.mesh.h_d() * pos;
      const FilterSpec& spec = pos < mu ? left : (pos > static_cast<double>(cells) - mu ? right : sym);
      out.push_back(numeric_filter_point(spec, u, x));
    }
  }
  return out;
}

}  // namespace psiac

#include "psiac/advection.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "psiac/errors.hpp"
#include "psiac/quadrature.hpp"
#include "psiac/rat_matrix.hpp"
#include "psiac/simd/kernels.hpp"
#include "psiac/spline.hpp"

namespace psiac {

namespace {

// Reference-cell operators for degree d, all premultiplied by M_d^-1.
struct CellOps {
  std::vector<double> m_inv;    // row-major
  std::vector<double> g_t;      // (M^-1 K)^T, row-major, for vecmat
  std::vector<double> g_left;   // M^-1 e_0
  std::vector<double> g_right;  // M^-1 e_d
};

CellOps build_ops(int d) {
  const auto n = static_cast<std::size_t>(d) + 1;
  const RatMatrix m_inv = rat_inverse(bernstein_mass_matrix(d));
  RatMatrix k(n, n);
  for (int l = 0; l <= d; ++l) {
    const RatPoly dl = bernstein_poly(d, l, 0, 1).derivative();
    for (int m = 0; m <= d; ++m) {
      k(static_cast<std::size_t>(l), static_cast<std::size_t>(m)) =
          integrate_on(dl * bernstein_poly(d, m, 0, 1), 0, 1);
    }
  }
  CellOps ops;
  ops.m_inv = m_inv.to_double();
  ops.g_t = (m_inv * k).transpose().to_double();
  for (std::size_t i = 0; i < n; ++i) {
    ops.g_left.push_back(m_inv(i, 0).to_double());
    ops.g_right.push_back(m_inv(i, n - 1).to_double());
  }
  return ops;
}

const CellOps& cell_ops(int d) {
  static std::mutex mu;
  static std::map<int, CellOps> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, build_ops(d)).first;
  return it->second;
}

double bernstein_value(int d, int l, double y) {
  return std::tgamma(d + 1.0) / (std::tgamma(l + 1.0) * std::tgamma(d - l + 1.0)) * std::pow(y, l) *
         std::pow(1.0 - y, d - l);
}

}  // namespace

Example make_example(int id) {
  Example ex;
  ex.id = id;
  ex.a = Rational(0);
  ex.b = Rational(1);
  if (id == 1) {
    const double k = std::numbers::pi * std::sqrt(10.0 / 7.0);
    ex.t_end = 1.0 / 16.0;
    ex.u0 = [k](double x) { return 0.7 * std::sin(k * x); };
    ex.exact = [k](double x, double t) { return 0.7 * std::sin(k * (x - t)); };
    ex.boundary.periodic = false;
    ex.boundary.inflow = [k](double t) { return 0.7 * std::sin(k * (0.0 - t)); };
    return ex;
  }
  if (id == 2) {
    const double k = 2.0 * std::numbers::pi;
    ex.t_end = 1.0;
    ex.u0 = [k](double x) { return std::sin(k * x); };
    ex.exact = [k](double x, double t) { return std::sin(k * (x - t)); };
    ex.boundary.periodic = true;
    return ex;
  }
  throw ConfigError("unknown example " + std::to_string(id) + " (expected 1 or 2)");
}

DGField<double> l2_project(const ScalarFn& f, const Mesh& mesh, int d) {
  if (d < 0) throw std::invalid_argument("l2_project: negative degree");
  const QuadratureRule& q = gauss_legendre_cached(d + 5);
  const CellOps& ops = cell_ops(d);
  const auto n = static_cast<std::size_t>(d) + 1;
  DGField<double> u(mesh, d);
  std::vector<double> load(n), c(n);
  for (std::size_t cell = 0; cell < mesh.cells(); ++cell) {
    const double x0 = mesh.a_d() + mesh.h_d() * static_cast<double>(cell);
    std::fill(load.begin(), load.end(), 0.0);
    for (std::size_t g = 0; g < q.nodes.size(); ++g) {
      const double y = 0.5 * (q.nodes[g] + 1.0);
      const double fw = 0.5 * q.weights[g] * f(x0 + mesh.h_d() * y);
      for (int l = 0; l <= d; ++l) load[static_cast<std::size_t>(l)] += fw * bernstein_value(d, l, y);
    }
    // Cell mass is h M_d and the load carries a factor h, which cancels.
    simd::vecmat(load, ops.m_inv, c);  // M^-1 is symmetric
    for (std::size_t l = 0; l < n; ++l) u.coeffs[cell * n + l] = c[l];
  }
  return u;
}

DGField<Rational> exact_project(const RatPoly& p, const Mesh& mesh, int d) {
  const auto n = static_cast<std::size_t>(d) + 1;
  const RatMatrix m_inv = rat_inverse(bernstein_mass_matrix(d));
  DGField<Rational> u(mesh, d);
  for (std::size_t cell = 0; cell < mesh.cells(); ++cell) {
    const Rational lo = mesh.cell_lower(cell);
    const Rational hi = lo + mesh.h();
    std::vector<Rational> load(n);
    for (int l = 0; l <= d; ++l) {
      load[static_cast<std::size_t>(l)] = integrate_on(p * bernstein_poly(d, l, lo, hi), lo, hi) / mesh.h();
    }
    const std::vector<Rational> c = m_inv * std::span<const Rational>(load);
    for (std::size_t l = 0; l < n; ++l) u.coeffs[cell * n + l] = c[l];
  }
  return u;
}

DGField<double> advection_rhs(const DGField<double>& u, const Boundary& bc, double t) {
  const int d = u.degree;
  const auto n = u.dofs_per_cell();
  const std::size_t cells = u.mesh.cells();
  const CellOps& ops = cell_ops(d);
  const double inv_h = 1.0 / u.mesh.h_d();
  DGField<double> out(u.mesh, d);
  out.time = t;
  for (std::size_t c = 0; c < cells; ++c) {
    const std::span<const double> uc = u.cell_coeffs(c);
    double inflow;
    if (c > 0) {
      inflow = u.at(c - 1, d);
    } else if (bc.periodic) {
      inflow = u.at(cells - 1, d);
    } else {
      inflow = bc.inflow(t);
    }
    const std::span<double> oc(out.coeffs.data() + c * n, n);
    simd::vecmat(uc, ops.g_t, oc);
    simd::axpy(-uc[n - 1], ops.g_right, oc);
    simd::axpy(inflow, ops.g_left, oc);
    for (double& v : oc) v *= inv_h;
  }
  return out;
}

DGField<double> integrate(DGField<double> u, const Boundary& bc, double t_end, double cfl) {
  if (!(cfl > 0.0)) throw std::invalid_argument("integrate: cfl must be positive");
  if (t_end < u.time) throw std::invalid_argument("integrate: t_end lies before the initial time");
  if (!bc.periodic && !bc.inflow) throw std::invalid_argument("integrate: inflow boundary needs a function");
  const double dt_max = cfl * u.mesh.h_d();
  DGField<double> stage(u.mesh, u.degree);
  double t = u.time;
  while (t < t_end) {
    double dt = dt_max;
    bool last = false;
    if (t + dt >= t_end) {
      dt = t_end - t;
      last = true;
    }
    const DGField<double> k1 = advection_rhs(u, bc, t);
    stage.coeffs = u.coeffs;
    simd::axpy(0.5 * dt, k1.coeffs, stage.coeffs);
    const DGField<double> k2 = advection_rhs(stage, bc, t + 0.5 * dt);
    stage.coeffs = u.coeffs;
    simd::axpy(0.5 * dt, k2.coeffs, stage.coeffs);
    const DGField<double> k3 = advection_rhs(stage, bc, t + 0.5 * dt);
    stage.coeffs = u.coeffs;
    simd::axpy(dt, k3.coeffs, stage.coeffs);
    const DGField<double> k4 = advection_rhs(stage, bc, t + dt);
    simd::axpy(dt / 6.0, k1.coeffs, u.coeffs);
    simd::axpy(dt / 3.0, k2.coeffs, u.coeffs);
    simd::axpy(dt / 3.0, k3.coeffs, u.coeffs);
    simd::axpy(dt / 6.0, k4.coeffs, u.coeffs);
    t = last ? t_end : t + dt;
    for (double v : u.coeffs) {
      if (!std::isfinite(v)) throw UnstableStep("integrate: non-finite coefficient at t = " + std::to_string(t));
    }
  }
  u.time = t;
  return u;
}

std::vector<Rational> sample_offsets(int points_per_cell) {
  if (points_per_cell < 1) throw std::invalid_argument("sample_offsets: need at least one point per cell");
  std::vector<Rational> out;
  for (int j = 0; j < points_per_cell; ++j) out.emplace_back(2 * j + 1, 2 * points_per_cell);
  return out;
}

ErrorMetrics error_metrics(const Mesh& mesh, int points_per_cell, std::span<const double> values,
                           const ScalarFn& exact) {
  const std::vector<Rational> offsets = sample_offsets(points_per_cell);
  if (values.size() != mesh.cells() * offsets.size()) {
    throw std::invalid_argument("error_metrics: expected one value per sample point");
  }
  ErrorMetrics m;
  m.weight = mesh.h_d() / points_per_cell;
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.cells(); ++c) {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      const double x = (mesh.cell_lower(c) + mesh.h() * offsets[j]).to_double();
      const double e = std::abs(values[c * offsets.size() + j] - exact(x));
      m.x.push_back(x);
      m.error.push_back(e);
      sum += e * e;
      m.linf = std::max(m.linf, e);
    }
  }
  m.l2 = std::sqrt(sum * m.weight);
  return m;
}

ErrorMetrics error_metrics(const DGField<double>& u, const ScalarFn& exact, int points_per_cell) {
  const std::vector<Rational> offsets = sample_offsets(points_per_cell);
  std::vector<double> values;
  values.reserve(u.mesh.cells() * offsets.size());
  for (std::size_t c = 0; c < u.mesh.cells(); ++c)
    for (const Rational& y : offsets) values.push_back(eval_in_cell(u, c, y.to_double()));
  return error_metrics(u.mesh, points_per_cell, values, exact);
}

ErrorMetrics restrict_to(const ErrorMetrics& m, double lo, double hi) {
  ErrorMetrics out;
  out.weight = m.weight;
  double sum = 0.0;
  for (std::size_t i = 0; i < m.x.size(); ++i) {
    if (m.x[i] < lo || m.x[i] > hi) continue;
    out.x.push_back(m.x[i]);
    out.error.push_back(m.error[i]);
    sum += m.error[i] * m.error[i];
    out.linf = std::max(out.linf, m.error[i]);
  }
  out.l2 = std::sqrt(sum * m.weight);
  return out;
}

double fitted_order(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size() || h.size() < 2) {
    throw std::invalid_argument("fitted_order: need at least two (h, error) pairs");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_snapshot_csv(std::ostream& os, const DGField<double>& u) {
  os << "cell,l,coefficient\n";
  const auto old = os.precision(17);
  for (std::size_t c = 0; c < u.mesh.cells(); ++c)
    for (int l = 0; l <= u.degree; ++l) os << c << ',' << l << ',' << u.at(c, l) << '\n';
  os.precision(old);
}

}  // namespace psiac

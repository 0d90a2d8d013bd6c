#include "psiac/psiac.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "psiac/errors.hpp"
#include "psiac/simd/kernels.hpp"
#include "psiac/spline.hpp"

namespace psiac {

namespace {

std::size_t to_size(const mpz_class& z) { return static_cast<std::size_t>(z.get_si()); }

// Column p of T belongs to B-spline index_set[r - p].
std::vector<PiecewisePoly> reflected_splines(const FilterSpec& spec, const Rational& lambda) {
  const int r = spec.reproduction_degree();
  std::vector<PiecewisePoly> out;
  for (int p = 0; p <= r; ++p) {
    out.push_back(bspline_pieces(spec.window(spec.index_set()[static_cast<std::size_t>(r - p)]).reflected(lambda)));
  }
  return out;
}

void require_one_sided(const FilterSpec& spec, const char* who) {
  if (spec.side() == Side::Symmetric) {
    throw std::invalid_argument(std::string(who) + ": needs a one-sided filter");
  }
}

}  // namespace

TMatrix build_T_general(const FilterSpec& spec, const Rational& lambda,
                        std::span<const Rational> breakpoints, int dg_degree) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("build_T_general: need at least one cell");
  }
  const Rational lo = lambda - spec.knots().back();
  const Rational hi = lambda - spec.knots().front();
  if (lo < breakpoints.front() || hi > breakpoints.back()) {
    throw MeshTooCoarse("filter window [" + lo.to_string() + ", " + hi.to_string() +
                        "] leaves the mesh [" + breakpoints.front().to_string() + ", " +
                        breakpoints.back().to_string() + "]");
  }

  std::size_t first = breakpoints.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > lo && breakpoints[i] < hi) {
      first = std::min(first, i);
      last = i + 1;
    }
  }

  const auto splines = reflected_splines(spec, lambda);
  const auto per = static_cast<std::size_t>(dg_degree) + 1;
  TMatrix t;
  t.lambda = lambda;
  t.first_cell = first;
  t.cell_count = last - first;
  t.dg_degree = dg_degree;
  t.T = RatMatrix(t.cell_count * per, splines.size());
  for (std::size_t c = 0; c < t.cell_count; ++c) {
    const Rational& s0 = breakpoints[first + c];
    const Rational& s1 = breakpoints[first + c + 1];
    for (int l = 0; l <= dg_degree; ++l) {
      const PiecewisePoly phi = bernstein_basis(dg_degree, l, s0, s1);
      for (std::size_t p = 0; p < splines.size(); ++p) {
        t.T(c * per + static_cast<std::size_t>(l), p) = integrate_piecewise_product(phi, splines[p], s0, s1);
      }
    }
  }
  return t;
}

std::size_t window_cells(const FilterSpec& spec) { return to_size(spec.support_width().ceil()); }

RatMatrix build_T_uniform(const FilterSpec& spec, int dg_degree) {
  require_one_sided(spec, "build_T_uniform");
  const int r = spec.reproduction_degree();
  const std::size_t n0 = window_cells(spec);
  const auto per = static_cast<std::size_t>(dg_degree) + 1;
  const Rational t0 = spec.knots().front();
  const Rational tn = spec.knots().back();
  RatMatrix t(n0 * per, static_cast<std::size_t>(r) + 1);

  for (int p = 0; p <= r; ++p) {
    const KnotVector w = spec.window(spec.index_set()[static_cast<std::size_t>(r - p)]);
    // Left: the window starts at the domain end, t in [0, t_n - t_0].
    // Right: the frame t = b/h - s runs inward from b, with Bernstein index
    // d - l, and the cells come out right to left.
    const PiecewisePoly spline =
        bspline_pieces(spec.side() == Side::Left ? w.reflected(tn) : w.shifted(-t0));
    for (std::size_t i = 0; i < n0; ++i) {
      const Rational lo(static_cast<long>(i));
      const Rational hi(static_cast<long>(i + 1));
      const std::size_t row_cell = spec.side() == Side::Left ? i : n0 - 1 - i;
      for (int l = 0; l <= dg_degree; ++l) {
        const int basis = spec.side() == Side::Left ? l : dg_degree - l;
        t(row_cell * per + static_cast<std::size_t>(l), static_cast<std::size_t>(p)) =
            integrate_piecewise_product(bernstein_basis(dg_degree, basis, lo, hi), spline, lo, hi);
      }
    }
  }
  return t;
}

namespace {

RatMatrix banded(int d, std::size_t cells, std::size_t cols,
                 const std::function<long(std::size_t)>& offset) {
  const RatMatrix md = bernstein_mass_matrix(d);
  const RatMatrix b = uniform_bspline_bb_coeffs(d);
  const auto per = static_cast<std::size_t>(d) + 1;
  RatMatrix t(cells * per, cols);
  for (std::size_t p = 0; p < cols; ++p) {
    const long start = offset(p);
    if (start < 0) continue;
    for (int rho = 0; rho <= d; ++rho) {
      const auto cell = static_cast<std::size_t>(start + rho);
      const auto block = md * RatMatrix(per, 1, b.column(static_cast<std::size_t>(rho)));
      for (std::size_t l = 0; l < per; ++l) t(cell * per + l, p) = block(l, 0);
    }
  }
  return t;
}

}  // namespace

RatMatrix closed_form_T_srv(int d) {
  if (d < 1) throw UnsupportedDegree("closed_form_T_srv: d must be at least 1");
  return banded(d, static_cast<std::size_t>(5 * d + 1), static_cast<std::size_t>(4 * d + 1),
                [](std::size_t p) { return static_cast<long>(p); });
}

RatMatrix closed_form_T_rlkv(int d) {
  if (d < 1) throw UnsupportedDegree("closed_form_T_rlkv: d must be at least 1");
  RatMatrix t = banded(d, static_cast<std::size_t>(3 * d + 1), static_cast<std::size_t>(2 * d + 2),
                       [](std::size_t p) { return static_cast<long>(p) - 1; });
  const RatMatrix md = bernstein_mass_matrix(d);
  for (int l = 0; l <= d; ++l) {
    t(static_cast<std::size_t>(l), 0) = Rational(d + 1) * md(static_cast<std::size_t>(l), 0);
  }
  return t;
}

ConvolutionMatrix build_Q(const FilterSpec& spec, const TMatrix& t, const Rational& h) {
  const int r = spec.reproduction_degree();
  const ReproSystem sys = kernel_coefficients(spec);
  ConvolutionMatrix q;
  q.Q = t.T * RatMatrix::reversal(static_cast<std::size_t>(r) + 1) * sys.M_inv *
        signed_binomial_diag(spec.kernel_degree(), r);
  q.Q_double = q.Q.to_double();
  q.side = spec.side();
  q.lambda = t.lambda;
  q.h = h;
  q.first_cell = t.first_cell;
  q.cell_count = t.cell_count;
  q.dg_degree = t.dg_degree;
  q.centre = h * t.lambda;
  q.half_width = h;
  q.Q_local = q.Q;
  q.Q_local_double = q.Q_double;
  return q;
}

void set_local_frame(ConvolutionMatrix& q, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("set_local_frame: empty interval");
  const std::size_t n = q.Q.cols();
  // y = yc + w z with y = (x - h lambda) / h.
  const Rational centre = (lo + hi) / Rational(2);
  const Rational half = (hi - lo) / Rational(2);
  const Rational yc = centre / q.h - q.lambda;
  const Rational w = half / q.h;
  RatMatrix s(n, n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j <= m; ++j)
      s(m, j) = binom(static_cast<long>(m), static_cast<long>(j)) * yc.pow(static_cast<int>(m - j)) *
                w.pow(static_cast<int>(j));
  q.Q_local = q.Q * s;
  q.Q_local_double = q.Q_local.to_double();
  q.centre = centre;
  q.half_width = half;
}

ConvolutionMatrix boundary_convolution(const FilterSpec& spec, const Mesh& mesh, int dg_degree) {
  require_one_sided(spec, "boundary_convolution");
  const Rational lambda = boundary_lambda(spec, mesh.a(), mesh.b(), mesh.h());
  const std::vector<Rational> s = mesh.prototype_breakpoints();
  ConvolutionMatrix q = build_Q(spec, build_T_general(spec, lambda, s, dg_degree), mesh.h());
  const Rational width = mesh.h() * symmetric_half_width(dg_degree);
  if (spec.side() == Side::Left) {
    q.valid_range = std::pair{mesh.a(), std::min(mesh.a() + width, mesh.b())};
  } else {
    q.valid_range = std::pair{std::max(mesh.b() - width, mesh.a()), mesh.b()};
  }
  set_local_frame(q, q.valid_range->first, q.valid_range->second);
  return q;
}

// ---- boundary polynomial ----

template <>
Rational BoundaryPoly<Rational>::derivative(const Rational& x, int order) const {
  const Rational y = x - h * lambda;
  Rational acc;
  for (std::size_t m = coefficients.size(); m-- > static_cast<std::size_t>(std::max(order, 0));) {
    Rational falling(1);
    for (int i = 0; i < order; ++i) falling *= Rational(static_cast<long>(m) - i);
    acc = acc * y + coefficients[m] * falling;
  }
  return acc;
}

template <>
double BoundaryPoly<double>::derivative(const double& x, int order) const {
  const double w = half_width.to_double();
  const double z = (x - centre.to_double()) / w;
  double acc = 0.0;
  for (std::size_t m = local.size(); m-- > static_cast<std::size_t>(std::max(order, 0));) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= static_cast<double>(static_cast<long>(m) - i);
    acc = acc * z + local[m] * falling;
  }
  for (int i = 0; i < order; ++i) acc /= w;
  return acc;
}

template <>
void BoundaryPoly<double>::evaluate(std::span<const double> xs, std::span<double> out) const {
  if (out.size() != xs.size()) throw std::invalid_argument("BoundaryPoly::evaluate: size mismatch");
  simd::horner_batch(local, centre.to_double(), 1.0 / half_width.to_double(), xs, out);
}

BoundaryPoly<Rational> make_boundary_poly(std::span<const Rational> u_I, const ConvolutionMatrix& q) {
  if (u_I.size() != q.Q.rows()) throw std::invalid_argument("make_boundary_poly: u_I size mismatch");
  BoundaryPoly<Rational> p;
  p.scaled = left_multiply(u_I, q.Q);
  p.coefficients.resize(p.scaled.size());
  Rational hp(1);
  for (std::size_t l = 0; l < p.scaled.size(); ++l) {
    p.coefficients[l] = p.scaled[l] / hp;
    hp *= q.h;
  }
  p.local = left_multiply(u_I, q.Q_local);
  p.centre = q.centre;
  p.half_width = q.half_width;
  p.lambda = q.lambda;
  p.h = q.h;
  p.side = q.side;
  p.valid_range = q.valid_range;
  return p;
}

BoundaryPoly<double> make_boundary_poly(std::span<const double> u_I, const ConvolutionMatrix& q) {
  if (u_I.size() != q.Q.rows()) throw std::invalid_argument("make_boundary_poly: u_I size mismatch");
  BoundaryPoly<double> p;
  p.scaled.resize(q.Q.cols());
  simd::vecmat(u_I, q.Q_double, p.scaled);
  p.coefficients.resize(p.scaled.size());
  const double hd = q.h.to_double();
  double hp = 1.0;
  for (std::size_t l = 0; l < p.scaled.size(); ++l) {
    p.coefficients[l] = p.scaled[l] / hp;
    hp *= hd;
  }
  p.local.resize(q.Q_local.cols());
  simd::vecmat(u_I, q.Q_local_double, p.local);
  p.centre = q.centre;
  p.half_width = q.half_width;
  p.lambda = q.lambda;
  p.h = q.h;
  p.side = q.side;
  p.valid_range = q.valid_range;
  return p;
}

namespace {

void check_range(const ConvolutionMatrix& q, const Rational& x) {
  if (q.valid_range && (x < q.valid_range->first || x > q.valid_range->second)) {
    throw OutOfRegion("x = " + x.to_string() + " lies outside the " + std::string(to_string(q.side)) +
                      " boundary region");
  }
}

void check_range(const ConvolutionMatrix& q, double x) {
  if (q.valid_range && (x < q.valid_range->first.to_double() || x > q.valid_range->second.to_double())) {
    throw OutOfRegion("x = " + std::to_string(x) + " lies outside the " + std::string(to_string(q.side)) +
                      " boundary region");
  }
}

}  // namespace

Rational filter_eval(std::span<const Rational> u_I, const ConvolutionMatrix& q, const Rational& x) {
  return filter_deriv(u_I, q, x, 0);
}

double filter_eval(std::span<const double> u_I, const ConvolutionMatrix& q, double x) {
  return filter_deriv(u_I, q, x, 0);
}

Rational filter_deriv(std::span<const Rational> u_I, const ConvolutionMatrix& q, const Rational& x, int order) {
  if (order < 0) throw std::invalid_argument("filter_deriv: negative order");
  check_range(q, x);
  return make_boundary_poly(u_I, q).derivative(x, order);
}

double filter_deriv(std::span<const double> u_I, const ConvolutionMatrix& q, double x, int order) {
  if (order < 0) throw std::invalid_argument("filter_deriv: negative order");
  check_range(q, x);
  return make_boundary_poly(u_I, q).derivative(x, order);
}

// ---- symmetric interior filter ----

SymmetricFilter::SymmetricFilter(int d)
    : spec_(filter_catalog(FilterFamily::Symmetric, d, Side::Symmetric)),
      c0_(kernel_coefficients(spec_).c0),
      half_width_(symmetric_half_width(d)) {}

SymmetricStencil SymmetricFilter::stencil(const Rational& theta) const {
  const int d = spec_.dg_degree();
  const auto per = static_cast<std::size_t>(d) + 1;
  SymmetricStencil s;
  s.first_offset = (theta - half_width_).floor().get_si();
  const long end = (theta + half_width_).ceil().get_si();
  s.cells = static_cast<std::size_t>(end - s.first_offset);
  s.weights.assign(s.cells * per, Rational());

  for (std::size_t q = 0; q < c0_.size(); ++q) {
    const PiecewisePoly spline = bspline_pieces(spec_.window(spec_.index_set()[q]).reflected(theta));
    for (std::size_t m = 0; m < s.cells; ++m) {
      const Rational lo(s.first_offset + static_cast<long>(m));
      const Rational hi = lo + Rational(1);
      for (int l = 0; l <= d; ++l) {
        s.weights[m * per + static_cast<std::size_t>(l)] +=
            c0_[q] * integrate_piecewise_product(bernstein_basis(d, l, lo, hi), spline, lo, hi);
      }
    }
  }
  s.weights_double.reserve(s.weights.size());
  for (const Rational& w : s.weights) s.weights_double.push_back(w.to_double());
  return s;
}

namespace {

struct InteriorPoint {
  std::size_t cell;
  Rational theta;
};

// Cell and offset of x, after checking the kernel support stays in [a, b].
InteriorPoint locate_interior(const Mesh& mesh, const Rational& half_width, const Rational& x) {
  const Rational pos = (x - mesh.a()) / mesh.h();
  if (pos - half_width < Rational(0) || pos + half_width > Rational(static_cast<long>(mesh.cells()))) {
    throw OutOfRegion("symmetric kernel at x = " + x.to_string() + " leaves the domain");
  }
  const mpz_class c = pos.floor();
  return {to_size(c), pos - Rational(c)};
}

template <class T>
T apply_stencil(const DGField<T>& u, std::size_t cell, const SymmetricStencil& s) {
  const std::size_t per = u.dofs_per_cell();
  const auto first = static_cast<std::size_t>(static_cast<long>(cell) + s.first_offset);
  if constexpr (std::is_same_v<T, double>) {
    return simd::dot(std::span<const double>(u.coeffs.data() + first * per, s.cells * per), s.weights_double);
  } else {
    Rational acc;
    for (std::size_t i = 0; i < s.cells * per; ++i) acc += u.coeffs[first * per + i] * s.weights[i];
    return acc;
  }
}

}  // namespace

Rational symmetric_filter_eval(const DGField<Rational>& u, const Rational& x) {
  const SymmetricFilter f(u.degree);
  const InteriorPoint p = locate_interior(u.mesh, f.half_width(), x);
  return apply_stencil(u, p.cell, f.stencil(p.theta));
}

double symmetric_filter_eval(const DGField<double>& u, const Rational& x) {
  const SymmetricFilter f(u.degree);
  const InteriorPoint p = locate_interior(u.mesh, f.half_width(), x);
  return apply_stencil(u, p.cell, f.stencil(p.theta));
}

// ---- whole field ----

template <class T>
FilteredField<T>::FilteredField(DGField<T> u, const FilterSpec& left, const FilterSpec& right)
    : u_(std::move(u)), left_spec_(left), right_spec_(right), symmetric_(u_.degree) {
  if (left.side() != Side::Left || right.side() != Side::Right) {
    throw std::invalid_argument("filter_field: expected a left and a right filter");
  }
  const Mesh& mesh = u_.mesh;
  const Rational width = mesh.h() * symmetric_.half_width();
  seam_lo_ = mesh.a() + width;
  seam_hi_ = mesh.b() - width;
  if (seam_lo_ > seam_hi_) {
    throw MeshTooCoarse("filter_field: " + std::to_string(mesh.cells()) +
                        " cells cannot hold the symmetric kernel");
  }
  const ConvolutionMatrix ql = boundary_convolution(left, mesh, u_.degree);
  const ConvolutionMatrix qr = boundary_convolution(right, mesh, u_.degree);
  left_ = make_boundary_poly(std::span<const T>(gather(u_, ql)), ql);
  right_ = make_boundary_poly(std::span<const T>(gather(u_, qr)), qr);
}

template <class T>
Region FilteredField<T>::classify(const Rational& x) const {
  if (x < seam_lo_) return Region::Left;
  if (x > seam_hi_) return Region::Right;
  return Region::Interior;
}

namespace {

template <class T>
T eval_poly(const BoundaryPoly<T>& p, const Rational& x) {
  if constexpr (std::is_same_v<T, double>) {
    return p(x.to_double());
  } else {
    return p(x);
  }
}

}  // namespace

template <class T>
T FilteredField<T>::operator()(const Rational& x) const {
  if (x < u_.mesh.a() || x > u_.mesh.b()) {
    throw OutOfRegion("x = " + x.to_string() + " lies outside the domain");
  }
  switch (classify(x)) {
    case Region::Left: return eval_poly(left_, x);
    case Region::Right: return eval_poly(right_, x);
    case Region::Interior: break;
  }
  const InteriorPoint p = locate_interior(u_.mesh, symmetric_.half_width(), x);
  return interior_value(p.cell, symmetric_.stencil(p.theta));
}

template <class T>
T FilteredField<T>::interior_value(std::size_t cell, const SymmetricStencil& s) const {
  return apply_stencil(u_, cell, s);
}

template <class T>
std::vector<T> FilteredField<T>::sample(std::span<const Rational> offsets) const {
  const Mesh& mesh = u_.mesh;
  const std::size_t n = mesh.cells();
  const Rational mu = symmetric_.half_width();
  const Rational upper = Rational(static_cast<long>(n)) - mu;
  std::vector<std::optional<SymmetricStencil>> stencils(offsets.size());
  std::vector<T> out(n * offsets.size());

  // Boundary points are batched per side so the double path can use the
  // vectorized Horner kernel.
  std::vector<std::size_t> idx_l, idx_r;
  std::vector<T> xs_l, xs_r;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
      const Rational pos = Rational(static_cast<long>(c)) + offsets[j];
      const std::size_t k = c * offsets.size() + j;
      if (pos < mu || pos > upper) {
        const Rational x = mesh.a() + mesh.h() * pos;
        T xv;
        if constexpr (std::is_same_v<T, double>) {
          xv = x.to_double();
        } else {
          xv = x;
        }
        (pos < mu ? idx_l : idx_r).push_back(k);
        (pos < mu ? xs_l : xs_r).push_back(xv);
        continue;
      }
      if (!stencils[j]) stencils[j] = symmetric_.stencil(offsets[j]);
      out[k] = interior_value(c, *stencils[j]);
    }
  }

  auto fill = [&](const BoundaryPoly<T>& p, const std::vector<std::size_t>& idx, const std::vector<T>& xs) {
    if constexpr (std::is_same_v<T, double>) {
      std::vector<double> vals(xs.size());
      p.evaluate(xs, vals);
      for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = vals[i];
    } else {
      for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = p(xs[i]);
    }
  };
  fill(left_, idx_l, xs_l);
  fill(right_, idx_r, xs_r);
  return out;
}

template <class T>
std::vector<typename FilteredField<T>::Seam> FilteredField<T>::seams() const {
  std::vector<Seam> out;
  for (const auto& [x, poly] : {std::pair{seam_lo_, &left_}, std::pair{seam_hi_, &right_}}) {
    const InteriorPoint p = locate_interior(u_.mesh, symmetric_.half_width(), x);
    out.push_back(Seam{x, eval_poly(*poly, x), interior_value(p.cell, symmetric_.stencil(p.theta))});
  }
  return out;
}

template class FilteredField<double>;
template class FilteredField<Rational>;

}  // namespace psiac

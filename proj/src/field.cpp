#include "qolct/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qolct/error.hpp"

namespace qolct {

Grid2D Grid2D::centered(std::size_t n, double extent) { return centered(n, n, extent, extent); }

Grid2D Grid2D::centered(std::size_t n1, std::size_t n2, double extent1, double extent2) {
  Grid2D g;
  g.n1 = n1;
  g.n2 = n2;
  g.spacing1 = extent1 / static_cast<double>(n1);
  g.spacing2 = extent2 / static_cast<double>(n2);
  g.validate();
  return g;
}

void Grid2D::validate() const {
  if (n1 == 0 || n2 == 0) throw InvalidArgument("grid sample counts must be positive");
  if (!(spacing1 > 0.0) || !(spacing2 > 0.0) || !std::isfinite(spacing1) || !std::isfinite(spacing2)) {
    throw InvalidArgument("grid spacings must be finite and positive");
  }
  if (!std::isfinite(center1) || !std::isfinite(center2)) throw InvalidArgument("grid centers must be finite");
}

double Grid2D::max_abs(GridAxis axis) const {
  const std::size_t n = count(axis);
  return std::max(std::abs(coord(axis, 0)), std::abs(coord(axis, n - 1)));
}

QField::QField(const Grid2D& grid) : grid_(grid), samples_(grid.size()) { grid_.validate(); }

QField::QField(const Grid2D& grid, std::vector<Quaternion> samples) : grid_(grid), samples_(std::move(samples)) {
  grid_.validate();
  if (samples_.size() != grid_.size()) {
    throw InvalidArgument("sample count " + std::to_string(samples_.size()) + " does not match grid size " +
                          std::to_string(grid_.size()));
  }
}

QField QField::relabeled(const Grid2D& grid) const {
  if (grid.n1 != grid_.n1 || grid.n2 != grid_.n2) throw InvalidArgument("relabel requires identical grid shape");
  return QField(grid, samples_);
}

QField sample(const Grid2D& grid, const Signal& signal) {
  QField f(grid);
  for (std::size_t p = 0; p < grid.n1; ++p) {
    const double t1 = grid.t1(p);
    for (std::size_t q = 0; q < grid.n2; ++q) f(p, q) = signal(t1, grid.t2(q));
  }
  return f;
}

QField component(const QField& f, int m) {
  if (m < 0 || m > 3) throw InvalidArgument("component index must be 0..3");
  QField out(f.grid());
  for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = Quaternion(f[idx][m]);
  return out;
}

namespace {

void require_same_grid(const QField& a, const QField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
}

}  // namespace

QField operator+(const QField& a, const QField& b) {
  require_same_grid(a, b);
  QField out(a.grid());
  for (std::size_t idx = 0; idx < a.size(); ++idx) out[idx] = a[idx] + b[idx];
  return out;
}

QField operator-(const QField& a, const QField& b) {
  require_same_grid(a, b);
  QField out(a.grid());
  for (std::size_t idx = 0; idx < a.size(); ++idx) out[idx] = a[idx] - b[idx];
  return out;
}

QField operator*(double s, const QField& f) {
  QField out(f.grid());
  for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = s * f[idx];
  return out;
}

QField left_multiply(const Quaternion& c, const QField& f) {
  QField out(f.grid());
  for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = c * f[idx];
  return out;
}

QField right_multiply(const QField& f, const Quaternion& c) {
  QField out(f.grid());
  for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = f[idx] * c;
  return out;
}

namespace {

constexpr std::size_t kPairwiseBlock = 16;

template <class T>
T pairwise_impl(std::span<const T> v) {
  if (v.size() <= kPairwiseBlock) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  T left = pairwise_impl(v.first(half));
  left += pairwise_impl(v.subspan(half));
  return left;
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise_impl(values); }
Quaternion pairwise_sum(std::span<const Quaternion> values) { return pairwise_impl(values); }

Quaternion integrate(const QField& g) { return pairwise_sum(g.samples()) * g.grid().cell_area(); }

double integrate_real(const Grid2D& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw InvalidArgument("integrand size does not match grid");
  return pairwise_sum(values) * grid.cell_area();
}

double l2_norm(const QField& f) {
  std::vector<double> sq(f.size());
  for (std::size_t idx = 0; idx < f.size(); ++idx) sq[idx] = norm2(f[idx]);
  return std::sqrt(integrate_real(f.grid(), sq));
}

double quartet_norm_pointwise(const ComponentQuartet& quartet, std::size_t index) {
  double s = 0.0;
  for (const QField& m : quartet.members) s += norm2(m[index]);
  return std::sqrt(s);
}

double quartet_l2_norm(const ComponentQuartet& quartet) {
  const Grid2D& grid = quartet.grid();
  for (const QField& m : quartet.members) require_same_grid(m, quartet.members[0]);
  std::vector<double> sq(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    double s = 0.0;
    for (const QField& m : quartet.members) s += norm2(m[idx]);
    sq[idx] = s;
  }
  return std::sqrt(integrate_real(grid, sq));
}

QField recombine(const ComponentQuartet& quartet) {
  static const std::array<Quaternion, 4> units = {Quaternion::one(), Quaternion::unit_i(), Quaternion::unit_j(),
                                                  Quaternion::unit_k()};
  QField out(quartet.grid());
  for (int m = 0; m < 4; ++m) {
    const QField& member = quartet.members[m];
    for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] += units[m] * member[idx];
  }
  return out;
}

QField synth_gaussian(const Grid2D& grid, double alpha1, double alpha2, const GaussianAmplitude& beta,
                      const PureUnit& lambda, const PureUnit& mu) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw InvalidArgument("gaussian widths alpha1, alpha2 must be > 0");
  const Quaternion b1 = Quaternion(beta.beta11) + beta.beta12 * lambda.q();
  const Quaternion b2 = Quaternion(beta.beta21) + beta.beta22 * mu.q();
  const Quaternion amplitude = b1 * b2;
  std::vector<double> e1(grid.n1), e2(grid.n2);
  for (std::size_t p = 0; p < grid.n1; ++p) e1[p] = std::exp(-alpha1 * grid.t1(p) * grid.t1(p));
  for (std::size_t q = 0; q < grid.n2; ++q) e2[q] = std::exp(-alpha2 * grid.t2(q) * grid.t2(q));
  QField f(grid);
  for (std::size_t p = 0; p < grid.n1; ++p) {
    for (std::size_t q = 0; q < grid.n2; ++q) f(p, q) = (e1[p] * e2[q]) * amplitude;
  }
  return f;
}

QField synth_gaussian(const Grid2D& grid, double alpha1, double alpha2) {
  return synth_gaussian(grid, alpha1, alpha2, GaussianAmplitude{}, PureUnit::i(), PureUnit::j());
}

std::vector<double> first_derivative_weights(std::span<const double> offsets, double at) {
  // Fornberg (1988), specialised to derivative orders 0 and 1.
  const std::size_t n = offsets.size();
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = offsets[0] - at;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[i] - at;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

QField partial_derivative(const QField& f, GridAxis axis, int order) {
  if (order != 4 && order != 6) throw InvalidArgument("finite-difference order must be 4 or 6");
  const Grid2D& grid = f.grid();
  const std::size_t n = grid.count(axis);
  const std::size_t width = static_cast<std::size_t>(order) + 1;
  if (n < width) {
    throw PreconditionViolation("grid too small for order-" + std::to_string(order) + " derivative: need " +
                                std::to_string(width) + " samples along the axis, have " + std::to_string(n));
  }
  const double inv_h = 1.0 / grid.spacing(axis);
  const std::size_t half = width / 2;

  // Stencil start and weights for every position along the axis.
  std::vector<std::size_t> start(n);
  std::vector<std::vector<double>> weights(n);
  std::vector<double> offsets(width);
  std::vector<double> interior;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t s = p < half ? 0 : std::min(p - half, n - width);
    start[p] = s;
    const bool is_interior = (s + half == p);
    if (is_interior && !interior.empty()) {
      weights[p] = interior;
      continue;
    }
    for (std::size_t i = 0; i < width; ++i) offsets[i] = static_cast<double>(s + i) - static_cast<double>(p);
    weights[p] = first_derivative_weights(offsets, 0.0);
    if (is_interior) interior = weights[p];
  }

  QField out(grid);
  for (std::size_t p = 0; p < grid.n1; ++p) {
    for (std::size_t q = 0; q < grid.n2; ++q) {
      const std::size_t pos = axis == GridAxis::first ? p : q;
      const std::vector<double>& w = weights[pos];
      Quaternion acc;
      for (std::size_t i = 0; i < width; ++i) {
        const std::size_t k = start[pos] + i;
        acc += w[i] * (axis == GridAxis::first ? f(k, q) : f(p, k));
      }
      out(p, q) = acc * inv_h;
    }
  }
  return out;
}

namespace {

// Four-point cubic Lagrange weights for fractional position x within [0, 1]
// relative to the nodes -1, 0, 1, 2.
std::array<double, 4> cubic_weights(double x) {
  return {-x * (x - 1.0) * (x - 2.0) / 6.0, (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0,
          -(x + 1.0) * x * (x - 2.0) / 2.0, (x + 1.0) * x * (x - 1.0) / 6.0};
}

// Node window and weights along one axis. Axes with fewer than four samples
// are not interpolable.
struct AxisStencil {
  std::size_t first = 0;
  std::array<double, 4> w{};
};

AxisStencil axis_stencil(const Grid2D& grid, GridAxis axis, double t) {
  const std::size_t n = grid.count(axis);
  if (n < 4) throw PreconditionViolation("bicubic interpolation needs at least 4 samples per axis");
  const double lo = grid.coord(axis, 0);
  const double hi = grid.coord(axis, n - 1);
  const double tol = 1e-12 * grid.spacing(axis);
  if (!(t >= lo - tol && t <= hi + tol)) {
    throw PreconditionViolation("interpolation point " + std::to_string(t) + " outside sampled range [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double pos = std::clamp((t - lo) / grid.spacing(axis), 0.0, static_cast<double>(n - 1));
  std::size_t cell = static_cast<std::size_t>(std::floor(pos));
  cell = std::min(cell, n - 2);
  // Window [cell-1, cell+2], shifted inward at the edges.
  std::size_t first = cell == 0 ? 0 : cell - 1;
  first = std::min(first, n - 4);
  AxisStencil s;
  s.first = first;
  s.w = cubic_weights(pos - static_cast<double>(first + 1));
  return s;
}

}  // namespace

Quaternion interpolate_bicubic(const QField& f, double t1, double t2) {
  const AxisStencil a = axis_stencil(f.grid(), GridAxis::first, t1);
  const AxisStencil b = axis_stencil(f.grid(), GridAxis::second, t2);
  Quaternion acc;
  for (std::size_t i = 0; i < 4; ++i) {
    Quaternion row;
    for (std::size_t j = 0; j < 4; ++j) row += b.w[j] * f(a.first + i, b.first + j);
    acc += a.w[i] * row;
  }
  return acc;
}

double max_abs_difference(const QField& a, const QField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t idx = 0; idx < a.size(); ++idx) m = std::max(m, distance(a[idx], b[idx]));
  return m;
}

double max_abs(const QField& f) {
  double m = 0.0;
  for (const Quaternion& q : f.samples()) m = std::max(m, norm(q));
  return m;
}

double relative_l2_distance(const QField& a, const QField& b) {
  const double denom = l2_norm(b);
  const double num = l2_norm(a - b);
  return denom > 0.0 ? num / denom : num;
}

QField crop(const QField& f, std::size_t p0, std::size_t m1, std::size_t q0, std::size_t m2) {
  const Grid2D& g = f.grid();
  if (m1 == 0 || m2 == 0 || p0 + m1 > g.n1 || q0 + m2 > g.n2) throw InvalidArgument("crop window outside field");
  Grid2D sub = g;
  sub.n1 = m1;
  sub.n2 = m2;
  sub.center1 = 0.5 * (g.t1(p0) + g.t1(p0 + m1 - 1));
  sub.center2 = 0.5 * (g.t2(q0) + g.t2(q0 + m2 - 1));
  QField out(sub);
  for (std::size_t p = 0; p < m1; ++p) {
    for (std::size_t q = 0; q < m2; ++q) out(p, q) = f(p0 + p, q0 + q);
  }
  return out;
}

}  // namespace qolct

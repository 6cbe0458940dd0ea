#include "qolct/qft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "fft.hpp"
#include "qolct/error.hpp"
#include "separable.hpp"

namespace qolct {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseSlack = 1e-12;
constexpr double kFftMatch = 1e-13;

void check_resolution(const Grid2D& in, const Grid2D& out) {
  for (GridAxis axis : {GridAxis::first, GridAxis::second}) {
    const int k = static_cast<int>(axis);
    const double a = out.spacing(axis) * in.extent(axis);
    const double b = out.extent(axis) * in.spacing(axis);
    if (a > kTwoPi * (1.0 + kPhaseSlack)) {
      throw PreconditionViolation("kernel phase unresolved on axis " + std::to_string(k) +
                                  ": output spacing * input extent = " + std::to_string(a) + " exceeds 2 pi");
    }
    if (b > kTwoPi * (1.0 + kPhaseSlack)) {
      throw PreconditionViolation("kernel phase aliased on axis " + std::to_string(k) +
                                  ": output extent * input spacing = " + std::to_string(b) + " exceeds 2 pi");
    }
  }
}

}  // namespace

QftPlan::QftPlan(const Grid2D& in, const Grid2D& out, const PureUnit& lambda, const PureUnit& mu, Direction dir)
    : input_(in), output_(out), lambda_(lambda), mu_(mu), direction_(dir) {
  input_.validate();
  output_.validate();
  check_resolution(input_, output_);
}

Grid2D default_spectrum_grid(const Grid2D& signal_grid) {
  signal_grid.validate();
  Grid2D g;
  g.n1 = signal_grid.n1;
  g.n2 = signal_grid.n2;
  g.spacing1 = kTwoPi / (static_cast<double>(signal_grid.n1) * signal_grid.spacing1);
  g.spacing2 = kTwoPi / (static_cast<double>(signal_grid.n2) * signal_grid.spacing2);
  return g;
}

QftPlan QftPlan::forward(const Grid2D& signal_grid, const PureUnit& lambda, const PureUnit& mu) {
  return QftPlan(signal_grid, default_spectrum_grid(signal_grid), lambda, mu, Direction::forward);
}

QftPlan QftPlan::forward(const Grid2D& signal_grid, const Grid2D& spectrum_grid, const PureUnit& lambda,
                         const PureUnit& mu) {
  return QftPlan(signal_grid, spectrum_grid, lambda, mu, Direction::forward);
}

QftPlan QftPlan::inverse(const Grid2D& spectrum_grid, const Grid2D& signal_grid, const PureUnit& lambda,
                         const PureUnit& mu) {
  return QftPlan(spectrum_grid, signal_grid, lambda, mu, Direction::inverse);
}

QftPlan QftPlan::inverted() const {
  return QftPlan(output_, input_, lambda_, mu_,
                 direction_ == Direction::forward ? Direction::inverse : Direction::forward);
}

bool QftPlan::fft_compatible() const {
  for (GridAxis axis : {GridAxis::first, GridAxis::second}) {
    const std::size_t n = input_.count(axis);
    if (output_.count(axis) != n) return false;
    const double product = input_.spacing(axis) * output_.spacing(axis) * static_cast<double>(n);
    if (std::abs(product - kTwoPi) > kFftMatch * kTwoPi) return false;
  }
  return true;
}

bool QftPlan::axes_ij() const { return lambda_ == PureUnit::i() && mu_ == PureUnit::j(); }

namespace {

double direction_sign(Direction d) { return d == Direction::forward ? -1.0 : 1.0; }

double direction_scale(const QftPlan& plan) {
  const double area = plan.input().cell_area();
  return plan.direction() == Direction::forward ? area : area / (kTwoPi * kTwoPi);
}

void require_input_grid(const QField& f, const QftPlan& plan) {
  if (!(f.grid() == plan.input())) throw InvalidArgument("field grid does not match the plan's input grid");
}

QField apply_direct(const QField& f, const QftPlan& plan) {
  require_input_grid(f, plan);
  const Grid2D& in = plan.input();
  const Grid2D& out = plan.output();
  const double s = direction_sign(plan.direction());
  std::vector<Quaternion> left(out.n1 * in.n1);
  for (std::size_t a = 0; a < out.n1; ++a) {
    for (std::size_t p = 0; p < in.n1; ++p) left[a * in.n1 + p] = axis_exp(plan.lambda(), s * out.t1(a) * in.t1(p));
  }
  std::vector<Quaternion> right(out.n2 * in.n2);
  for (std::size_t b = 0; b < out.n2; ++b) {
    for (std::size_t q = 0; q < in.n2; ++q) right[b * in.n2 + q] = axis_exp(plan.mu(), s * out.t2(b) * in.t2(q));
  }
  return detail::separable_apply(f, out, left, right, direction_scale(plan));
}

// Sums CC, CS, SC, SS of r(t) cos/sin(w1 t1) cos/sin(w2 t2) for one real component.
struct TrigSums {
  std::vector<double> cc, cs, sc, ss;
};

TrigSums trig_sums(const QField& f, int m, const Grid2D& in, const Grid2D& out) {
  const std::size_t n1 = in.n1, n2 = in.n2;
  using C = std::complex<double>;

  // Axis 1: rows indexed by q, length n1.
  std::vector<C> cols(n1 * n2);
  for (std::size_t p = 0; p < n1; ++p) {
    for (std::size_t q = 0; q < n2; ++q) cols[q * n1 + p] = C(f(p, q)[m], 0.0);
  }
  detail::shifted_dft(cols, n1, in.center1, in.spacing1, out.center1, out.spacing1);

  // Axis 2: first n1 rows carry the cosine sums, next n1 rows the sine sums.
  std::vector<C> rows(2 * n1 * n2);
  for (std::size_t q = 0; q < n2; ++q) {
    for (std::size_t a = 0; a < n1; ++a) {
      const C v = cols[q * n1 + a];
      rows[a * n2 + q] = C(v.real(), 0.0);
      rows[(n1 + a) * n2 + q] = C(-v.imag(), 0.0);
    }
  }
  detail::shifted_dft(rows, n2, in.center2, in.spacing2, out.center2, out.spacing2);

  TrigSums s;
  s.cc.resize(n1 * n2);
  s.cs.resize(n1 * n2);
  s.sc.resize(n1 * n2);
  s.ss.resize(n1 * n2);
  for (std::size_t idx = 0; idx < n1 * n2; ++idx) {
    s.cc[idx] = rows[idx].real();
    s.cs[idx] = -rows[idx].imag();
    s.sc[idx] = rows[n1 * n2 + idx].real();
    s.ss[idx] = -rows[n1 * n2 + idx].imag();
  }
  return s;
}

// Unit quaternion r with r i conj(r) = target (index 1) or r j conj(r) = target (index 2).
Quaternion rotation_onto(const Quaternion& from, const PureUnit& target) {
  const Quaternion& b = target.q();
  const double dot = from.x * b.x + from.y * b.y + from.z * b.z;
  Quaternion r{1.0 + dot, from.y * b.z - from.z * b.y, from.z * b.x - from.x * b.z, from.x * b.y - from.y * b.x};
  if (norm(r) < 1e-8) {
    // Antiparallel: a half turn about any axis orthogonal to `from`.
    r = std::abs(from.x) < 0.9 ? Quaternion{0.0, 0.0, -from.z, from.y} : Quaternion{0.0, from.z, 0.0, -from.x};
  }
  return r / norm(r);
}

// e^{lambda a} = p e^{i a} conj(p) and e^{mu b} = s e^{j b} conj(s), so the
// transform is p T_{i,j}{conj(p) f s} conj(s).
QField rotated_fast(const QField& f, const QftPlan& plan) {
  const Quaternion p = rotation_onto(Quaternion::unit_i(), plan.lambda());
  const Quaternion s = rotation_onto(Quaternion::unit_j(), plan.mu());
  const QftPlan ij = plan.direction() == Direction::forward
                         ? QftPlan::forward(plan.input(), plan.output(), PureUnit::i(), PureUnit::j())
                         : QftPlan::inverse(plan.input(), plan.output(), PureUnit::i(), PureUnit::j());
  QField g(f.grid());
  const Quaternion pc = conj(p), sc = conj(s);
  for (std::size_t idx = 0; idx < f.size(); ++idx) g[idx] = pc * f[idx] * s;
  QField out = qft_fast_ij(g, ij);
  for (Quaternion& v : out.samples()) v = p * v * sc;
  return out;
}

}  // namespace

QField qft_direct(const QField& f, const QftPlan& plan) {
  if (plan.direction() != Direction::forward) throw InvalidArgument("qft_direct needs a forward plan");
  return apply_direct(f, plan);
}

QField iqft_direct(const QField& spectrum, const QftPlan& plan) {
  if (plan.direction() != Direction::inverse) throw InvalidArgument("iqft_direct needs an inverse plan");
  return apply_direct(spectrum, plan);
}

QField qft_fast_ij(const QField& f, const QftPlan& plan) {
  if (!plan.axes_ij()) throw InvalidArgument("fast QFT path requires lambda = i and mu = j");
  if (!plan.fft_compatible()) {
    throw PreconditionViolation("fast QFT path requires FFT-compatible grids (spacing_u = 2 pi / (n spacing_t))");
  }
  require_input_grid(f, plan);
  const Grid2D& in = plan.input();
  const Grid2D& out = plan.output();
  const double s = direction_sign(plan.direction());
  const double scale = direction_scale(plan);

  // e^{s i a} e_m = e_m e^{s sigma_m i a}; j and k anticommute with i.
  constexpr double sigma[4] = {1.0, 1.0, -1.0, -1.0};
  const Quaternion units[4] = {Quaternion::one(), Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::unit_k()};

  QField result(out);
  for (int m = 0; m < 4; ++m) {
    bool any = false;
    for (const Quaternion& v : f.samples()) {
      if (v[m] != 0.0) {
        any = true;
        break;
      }
    }
    if (!any) continue;
    const TrigSums t = trig_sums(f, m, in, out);
    const double s1 = s * sigma[m];
    const double s2 = s;
    for (std::size_t idx = 0; idx < result.size(); ++idx) {
      const Quaternion block{t.cc[idx], s1 * t.sc[idx], s2 * t.cs[idx], s1 * s2 * t.ss[idx]};
      result[idx] += units[m] * block;
    }
  }
  for (Quaternion& v : result.samples()) v *= scale;
  return result;
}

QField qft(const QField& f, const QftPlan& plan) {
  if (plan.direction() != Direction::forward) throw InvalidArgument("qft needs a forward plan");
  if (plan.fft_compatible()) return plan.axes_ij() ? qft_fast_ij(f, plan) : rotated_fast(f, plan);
  return apply_direct(f, plan);
}

QField iqft(const QField& spectrum, const QftPlan& plan) {
  if (plan.direction() != Direction::inverse) throw InvalidArgument("iqft needs an inverse plan");
  if (plan.fft_compatible()) return plan.axes_ij() ? qft_fast_ij(spectrum, plan) : rotated_fast(spectrum, plan);
  return apply_direct(spectrum, plan);
}

ComponentQuartet qft_quartet(const QField& f, const QftPlan& plan) {
  ComponentQuartet q;
  for (int m = 0; m < 4; ++m) q.members[m] = qft(component(f, m), plan);
  return q;
}

IdentityReport derivative_identity_check(const QField& f, const QftPlan& plan, int m, int n, int fd_order) {
  if (m < 0 || n < 0 || m + n > 2) throw InvalidArgument("derivative orders must satisfy m, n >= 0 and m + n <= 2");
  QField g = f;
  for (int r = 0; r < m; ++r) g = partial_derivative(g, GridAxis::first, fd_order);
  for (int r = 0; r < n; ++r) g = partial_derivative(g, GridAxis::second, fd_order);

  IdentityReport rep;
  rep.lhs = qft(g, plan);
  const QField spectrum = (m == 0 && n == 0) ? rep.lhs : qft(f, plan);
  const Grid2D& out = plan.output();
  rep.rhs = QField(out);
  for (std::size_t a = 0; a < out.n1; ++a) {
    const Quaternion left_factor = plan.lambda().q() * out.t1(a);
    for (std::size_t b = 0; b < out.n2; ++b) {
      const Quaternion right_factor = plan.mu().q() * out.t2(b);
      Quaternion v = spectrum(a, b);
      for (int r = 0; r < m; ++r) v = left_factor * v;
      for (int r = 0; r < n; ++r) v = v * right_factor;
      rep.rhs(a, b) = v;
    }
  }
  rep.max_error = max_abs_difference(rep.lhs, rep.rhs);
  rep.reference = max_abs(rep.rhs);
  rep.relative_error = rep.reference > 0.0 ? rep.max_error / rep.reference : rep.max_error;
  return rep;
}

}  // namespace qolct

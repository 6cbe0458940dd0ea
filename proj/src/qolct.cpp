#include "qolct/qolct.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qolct/error.hpp"
#include "qolct/fault.hpp"
#include "separable.hpp"

namespace qolct {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kPlanDetTol = 1e-9;

std::string axis_name(GridAxis axis) { return axis == GridAxis::first ? "1" : "2"; }

void require_positive_b(const OffsetParams& A, GridAxis axis) {
  if (!(A.b > 0.0)) {
    throw InvalidArgument("main-branch transform requires b" + axis_name(axis) + " > 0 (got " + std::to_string(A.b) +
                          ")");
  }
}

// Grid of QFT frequencies u_k / b_k matching an output grid.
Grid2D frequency_grid(const Grid2D& out, const OffsetParams& A1, const OffsetParams& A2) {
  Grid2D w = out;
  w.center1 = out.center1 / A1.b;
  w.center2 = out.center2 / A2.b;
  w.spacing1 = out.spacing1 / A1.b;
  w.spacing2 = out.spacing2 / A2.b;
  return w;
}

void check_chirp(const Grid2D& in, const OffsetParams& A, GridAxis axis) {
  const double step = std::abs(A.a) / A.b * in.max_abs(axis) * in.spacing(axis);
  if (step > kPi * (1.0 + 1e-12)) {
    throw PreconditionViolation("chirp unresolved on axis " + axis_name(axis) + ": |a|/b * max|t| * spacing = " +
                                std::to_string(step) + " exceeds pi");
  }
}

void check_kernel_axis(const Grid2D& in, const Grid2D& out, const OffsetParams& A, GridAxis axis) {
  const double w_step = out.spacing(axis) / A.b;
  const double a = w_step * in.extent(axis);
  const double b = w_step * static_cast<double>(out.count(axis)) * in.spacing(axis);
  if (a > kTwoPi * (1.0 + 1e-12) || b > kTwoPi * (1.0 + 1e-12)) {
    throw PreconditionViolation("kernel phase unresolved on axis " + axis_name(axis) +
                                ": (spacing_u / b) * extent_t = " + std::to_string(a) +
                                ", (extent_u / b) * spacing_t = " + std::to_string(b) + ", bound 2 pi");
  }
}

// e^{lambda (-2u(d tau - b eta) + d(u^2 + tau^2)) / (2b)}, the u-dependent part of the kernel.
double output_phase(const OffsetParams& A, double u) {
  return (-2.0 * u * (A.d * A.tau - A.b * A.eta) + A.d * (u * u + A.tau * A.tau)) / (2.0 * A.b);
}

double input_phase(const OffsetParams& A, double t) { return (t * A.tau + 0.5 * A.a * t * t) / A.b; }

double normalization(const OffsetParams& A) { return 1.0 / std::sqrt(kTwoPi * A.b); }

// sign = -1 conjugates the right-hand factor (mutation fixture).
QField premultiply(const QField& f, const QolctPlan& plan, double right_sign) {
  const Grid2D& g = f.grid();
  std::vector<Quaternion> left(g.n1), right(g.n2);
  for (std::size_t p = 0; p < g.n1; ++p) left[p] = axis_exp(plan.lambda(), input_phase(plan.A1(), g.t1(p)));
  for (std::size_t q = 0; q < g.n2; ++q) right[q] = axis_exp(plan.mu(), right_sign * input_phase(plan.A2(), g.t2(q)));
  QField out(g);
  for (std::size_t p = 0; p < g.n1; ++p) {
    for (std::size_t q = 0; q < g.n2; ++q) out(p, q) = left[p] * f(p, q) * right[q];
  }
  return out;
}

std::vector<Quaternion> left_output_factors(const QolctPlan& plan, bool normalize) {
  const Grid2D& out = plan.output();
  const OffsetParams& A = plan.A1();
  const Quaternion c = inv_sqrt_unit(plan.lambda()) * (normalize ? normalization(A) : 1.0);
  std::vector<Quaternion> v(out.n1);
  for (std::size_t a = 0; a < out.n1; ++a) v[a] = c * axis_exp(plan.lambda(), output_phase(A, out.t1(a)));
  return v;
}

std::vector<Quaternion> right_output_factors(const QolctPlan& plan, bool normalize, double sign) {
  const Grid2D& out = plan.output();
  const OffsetParams& A = plan.A2();
  const Quaternion c = inv_sqrt_unit(plan.mu()) * (normalize ? normalization(A) : 1.0);
  std::vector<Quaternion> v(out.n2);
  for (std::size_t b = 0; b < out.n2; ++b) v[b] = axis_exp(plan.mu(), sign * output_phase(A, out.t2(b))) * c;
  return v;
}

void require_grid(const QField& f, const Grid2D& g, const char* what) {
  if (!(f.grid() == g)) throw InvalidArgument(std::string("field grid does not match the plan's ") + what + " grid");
}

std::vector<Quaternion> kernel_table(const OffsetParams& A, const PureUnit& unit, const Grid2D& in,
                                     const Grid2D& out, GridAxis axis, bool conjugate, bool u_major) {
  const std::size_t n = in.count(axis), m = out.count(axis);
  std::vector<Quaternion> table(n * m);
  for (std::size_t a = 0; a < m; ++a) {
    const double u = out.coord(axis, a);
    for (std::size_t p = 0; p < n; ++p) {
      Quaternion k = kernel(A, unit, in.coord(axis, p), u);
      if (conjugate) k = conj(k);
      table[u_major ? a * n + p : p * m + a] = k;
    }
  }
  return table;
}

}  // namespace

OffsetParams OffsetParams::make(double a, double b, double c, double d, double tau, double eta, double tol) {
  OffsetParams p{a, b, c, d, tau, eta};
  p.validate(tol);
  return p;
}

OffsetParams OffsetParams::qft_case() { return {0.0, 1.0, -1.0, 0.0, 0.0, 0.0}; }

void OffsetParams::validate(double tol) const {
  for (double v : {a, b, c, d, tau, eta}) {
    if (!std::isfinite(v)) throw InvalidArgument("offset parameters must be finite");
  }
  const double det = determinant();
  if (std::abs(det - 1.0) > tol) {
    throw InvalidArgument("matrix must satisfy ad - bc = 1 (got " + std::to_string(det) + ")");
  }
}

Quaternion kernel(const OffsetParams& A, const PureUnit& lambda, double t, double u) {
  if (!(A.b > 0.0)) throw InvalidArgument("kernel requires b > 0");
  const double phase =
      (A.a * t * t - 2.0 * t * (u - A.tau) - 2.0 * u * (A.d * A.tau - A.b * A.eta) + A.d * (u * u + A.tau * A.tau)) /
      (2.0 * A.b);
  return normalization(A) * (inv_sqrt_unit(lambda) * axis_exp(lambda, phase));
}

Grid2D default_qolct_output_grid(const Grid2D& input, const OffsetParams& A1, const OffsetParams& A2) {
  require_positive_b(A1, GridAxis::first);
  require_positive_b(A2, GridAxis::second);
  Grid2D w = default_spectrum_grid(input);
  w.spacing1 *= A1.b;
  w.spacing2 *= A2.b;
  return w;
}

QolctPlan::QolctPlan(const OffsetParams& A1, const OffsetParams& A2, const PureUnit& lambda, const PureUnit& mu,
                     const Grid2D& input)
    : QolctPlan(A1, A2, lambda, mu, input, default_qolct_output_grid(input, A1, A2)) {}

QolctPlan::QolctPlan(const OffsetParams& A1, const OffsetParams& A2, const PureUnit& lambda, const PureUnit& mu,
                     const Grid2D& input, const Grid2D& output)
    : A1_(A1), A2_(A2), lambda_(lambda), mu_(mu), input_(input), output_(output) {
  A1_.validate(kPlanDetTol);
  A2_.validate(kPlanDetTol);
  input_.validate();
  output_.validate();
  for (GridAxis axis : {GridAxis::first, GridAxis::second}) {
    const OffsetParams& A = params(axis);
    if (A.b < 0.0) {
      throw InvalidArgument("b" + axis_name(axis) + " < 0 is not supported; the transform is normalized for b > 0");
    }
    if (A.b > 0.0) {
      check_chirp(input_, A, axis);
      check_kernel_axis(input_, output_, A, axis);
    }
  }
  if (A1_.b > 0.0 && A2_.b > 0.0) {
    qft_.emplace(QftPlan::forward(input_, frequency_grid(output_, A1_, A2_), lambda_, mu_));
  }
}

const QftPlan& QolctPlan::qft_plan() const {
  if (!qft_) throw InvalidArgument("main-branch transform requires b1 > 0 and b2 > 0");
  return *qft_;
}

QolctPlan QolctPlan::with_input(const Grid2D& input) const { return QolctPlan(A1_, A2_, lambda_, mu_, input, output_); }

QolctPlan QolctPlan::with_output(const Grid2D& output) const {
  return QolctPlan(A1_, A2_, lambda_, mu_, input_, output);
}

QField chirp_premultiply(const QField& f, const QolctPlan& plan) {
  require_positive_b(plan.A1(), GridAxis::first);
  require_positive_b(plan.A2(), GridAxis::second);
  return premultiply(f, plan, 1.0);
}

QField qolct_forward(const QField& f, const QolctPlan& plan) {
  const QftPlan& qp = plan.qft_plan();
  require_grid(f, plan.input(), "input");
  const double right_sign = fault::is_active(fault::Fault::right_kernel_sign) ? -1.0 : 1.0;
  const bool normalize = !fault::is_active(fault::Fault::drop_normalization);
  const bool swap = fault::is_active(fault::Fault::kernel_order);

  const QField spectrum = qft(premultiply(f, plan, right_sign), qp);
  const std::vector<Quaternion> left = left_output_factors(plan, normalize);
  const std::vector<Quaternion> right = right_output_factors(plan, normalize, right_sign);
  const Grid2D& out = plan.output();
  QField result(out);
  for (std::size_t a = 0; a < out.n1; ++a) {
    for (std::size_t b = 0; b < out.n2; ++b) {
      const Quaternion& s = spectrum(a, b);
      result(a, b) = swap ? s * left[a] * right[b] : left[a] * s * right[b];
    }
  }
  return result;
}

QField qolct_direct(const QField& f, const QolctPlan& plan) {
  plan.qft_plan();
  require_grid(f, plan.input(), "input");
  const Grid2D& in = plan.input();
  const Grid2D& out = plan.output();
  const auto left = kernel_table(plan.A1(), plan.lambda(), in, out, GridAxis::first, false, true);
  const auto right = kernel_table(plan.A2(), plan.mu(), in, out, GridAxis::second, false, true);
  return detail::separable_apply(f, out, left, right, in.cell_area());
}

QField qolct_inverse(const QField& spectrum, const QolctPlan& plan) {
  const QftPlan& qp = plan.qft_plan();
  require_grid(spectrum, plan.output(), "output");
  const std::vector<Quaternion> left = left_output_factors(plan, true);
  const std::vector<Quaternion> right = right_output_factors(plan, true, 1.0);
  const double s1 = kTwoPi * plan.A1().b, s2 = kTwoPi * plan.A2().b;
  const Grid2D& out = plan.output();
  QField h(qp.output());
  for (std::size_t a = 0; a < out.n1; ++a) {
    const Quaternion li = s1 * conj(left[a]);
    for (std::size_t b = 0; b < out.n2; ++b) h(a, b) = li * spectrum(a, b) * (s2 * conj(right[b]));
  }
  const QField g = iqft(h, qp.inverted());
  const Grid2D& in = plan.input();
  QField f(in);
  for (std::size_t p = 0; p < in.n1; ++p) {
    const Quaternion e1 = axis_exp(plan.lambda(), -input_phase(plan.A1(), in.t1(p)));
    for (std::size_t q = 0; q < in.n2; ++q) {
      f(p, q) = e1 * g(p, q) * axis_exp(plan.mu(), -input_phase(plan.A2(), in.t2(q)));
    }
  }
  return f;
}

QField qolct_inverse_direct(const QField& spectrum, const QolctPlan& plan) {
  plan.qft_plan();
  require_grid(spectrum, plan.output(), "output");
  const Grid2D& in = plan.input();
  const Grid2D& out = plan.output();
  const auto left = kernel_table(plan.A1(), plan.lambda(), in, out, GridAxis::first, true, false);
  const auto right = kernel_table(plan.A2(), plan.mu(), in, out, GridAxis::second, true, false);
  return detail::separable_apply(spectrum, in, left, right, out.cell_area());
}

ComponentQuartet qolct_quartet(const QField& f, const QolctPlan& plan) {
  ComponentQuartet q;
  for (int m = 0; m < 4; ++m) q.members[m] = qolct_forward(component(f, m), plan);
  return q;
}

namespace {

// sqrt(d) under the b -> 0+ limit: sqrt|d| for d > 0, sqrt|d| (-unit) for d < 0.
Quaternion collapsed_scale(const OffsetParams& A, const PureUnit& unit) {
  const double s = std::sqrt(std::abs(A.d));
  return A.d > 0.0 ? Quaternion(s) : -s * unit.q();
}

Quaternion collapsed_phase(const OffsetParams& A, const PureUnit& unit, double u, DegeneratePhase phase) {
  const double r = u - A.tau;
  const double linear = phase == DegeneratePhase::limit ? u * A.eta : u * A.tau;
  return axis_exp(unit, 0.5 * A.c * A.d * r * r + linear);
}

void require_collapsed(const OffsetParams& A, GridAxis axis) {
  if (A.b != 0.0) throw InvalidArgument("degenerate branch needs b" + axis_name(axis) + " = 0 exactly");
  if (A.d == 0.0) throw InvalidArgument("degenerate branch needs d" + axis_name(axis) + " != 0");
}

}  // namespace

QField qolct_degenerate(const QField& f, const QolctPlan& plan, DegenerateBranch which, DegeneratePhase phase) {
  require_grid(f, plan.input(), "input");
  const OffsetParams& A1 = plan.A1();
  const OffsetParams& A2 = plan.A2();
  const Grid2D& in = plan.input();
  const Grid2D& out = plan.output();
  QField result(out);

  switch (which) {
    case DegenerateBranch::both_zero: {
      require_collapsed(A1, GridAxis::first);
      require_collapsed(A2, GridAxis::second);
      const Quaternion s1 = collapsed_scale(A1, plan.lambda()), s2 = collapsed_scale(A2, plan.mu());
      for (std::size_t a = 0; a < out.n1; ++a) {
        const double u1 = out.t1(a);
        const Quaternion l = s1 * collapsed_phase(A1, plan.lambda(), u1, phase);
        for (std::size_t b = 0; b < out.n2; ++b) {
          const double u2 = out.t2(b);
          const Quaternion v = interpolate_bicubic(f, A1.d * (u1 - A1.tau), A2.d * (u2 - A2.tau));
          result(a, b) = l * v * (collapsed_phase(A2, plan.mu(), u2, phase) * s2);
        }
      }
      return result;
    }
    case DegenerateBranch::b1_zero: {
      require_collapsed(A1, GridAxis::first);
      require_positive_b(A2, GridAxis::second);
      const auto right = kernel_table(A2, plan.mu(), in, out, GridAxis::second, false, true);
      const Quaternion s1 = collapsed_scale(A1, plan.lambda());
      std::vector<Quaternion> row(in.n2), terms(in.n2);
      for (std::size_t a = 0; a < out.n1; ++a) {
        const double u1 = out.t1(a);
        const double t1 = A1.d * (u1 - A1.tau);
        for (std::size_t q = 0; q < in.n2; ++q) row[q] = interpolate_bicubic(f, t1, in.t2(q));
        const Quaternion l = s1 * collapsed_phase(A1, plan.lambda(), u1, phase);
        for (std::size_t b = 0; b < out.n2; ++b) {
          for (std::size_t q = 0; q < in.n2; ++q) terms[q] = row[q] * right[b * in.n2 + q];
          result(a, b) = in.spacing2 * (l * pairwise_sum(terms));
        }
      }
      return result;
    }
    case DegenerateBranch::b2_zero: {
      require_positive_b(A1, GridAxis::first);
      require_collapsed(A2, GridAxis::second);
      const auto left = kernel_table(A1, plan.lambda(), in, out, GridAxis::first, false, true);
      const Quaternion s2 = collapsed_scale(A2, plan.mu());
      std::vector<Quaternion> col(in.n1), terms(in.n1);
      for (std::size_t b = 0; b < out.n2; ++b) {
        const double u2 = out.t2(b);
        const double t2 = A2.d * (u2 - A2.tau);
        for (std::size_t p = 0; p < in.n1; ++p) col[p] = interpolate_bicubic(f, in.t1(p), t2);
        const Quaternion r = collapsed_phase(A2, plan.mu(), u2, phase) * s2;
        for (std::size_t a = 0; a < out.n1; ++a) {
          for (std::size_t p = 0; p < in.n1; ++p) terms[p] = left[a * in.n1 + p] * col[p];
          result(a, b) = in.spacing1 * (pairwise_sum(terms) * r);
        }
      }
      return result;
    }
  }
  throw InvalidArgument("unknown degenerate branch");
}

namespace {

IdentityReport finish_report(QField lhs, QField rhs) {
  IdentityReport rep;
  rep.max_error = max_abs_difference(lhs, rhs);
  rep.reference = max_abs(rhs);
  rep.relative_error = rep.reference > 0.0 ? rep.max_error / rep.reference : rep.max_error;
  rep.lhs = std::move(lhs);
  rep.rhs = std::move(rhs);
  return rep;
}

double shift_phase(const OffsetParams& A, double k, double u, CovariancePhase phase) {
  double num = (2.0 * k * u - A.a * k * k) * A.b * A.c - 2.0 * k * A.a * (A.d * A.tau - A.b * A.eta);
  if (phase == CovariancePhase::derived) num += 2.0 * k * A.tau;
  return num / (2.0 * A.b);
}

double modulation_phase(const OffsetParams& A, double xi, double u, CovariancePhase phase) {
  const double cross = phase == CovariancePhase::derived ? 2.0 * u * xi : 2.0 * A.b * u;
  return -(0.5 * A.d * (A.b * xi * xi - cross) + xi * (A.d * A.tau - A.b * A.eta));
}

}  // namespace

IdentityReport shift_covariance_check(const QField& f, const QolctPlan& plan, double k1, double k2,
                                      CovariancePhase phase) {
  require_grid(f, plan.input(), "input");
  const OffsetParams& A1 = plan.A1();
  const OffsetParams& A2 = plan.A2();
  Grid2D moved = plan.input();
  moved.center1 += k1;
  moved.center2 += k2;
  QField lhs = qolct_forward(f.relabeled(moved), plan.with_input(moved));

  const Grid2D& out = plan.output();
  Grid2D back = out;
  back.center1 -= A1.a * k1;
  back.center2 -= A2.a * k2;
  const QField base = qolct_forward(f, plan.with_output(back));
  QField rhs(out);
  for (std::size_t a = 0; a < out.n1; ++a) {
    const Quaternion l = axis_exp(plan.lambda(), shift_phase(A1, k1, out.t1(a), phase));
    for (std::size_t b = 0; b < out.n2; ++b) {
      rhs(a, b) = l * base(a, b) * axis_exp(plan.mu(), shift_phase(A2, k2, out.t2(b), phase));
    }
  }
  return finish_report(std::move(lhs), std::move(rhs));
}

IdentityReport modulation_covariance_check(const QField& f, const QolctPlan& plan, double xi1, double xi2,
                                           CovariancePhase phase) {
  require_grid(f, plan.input(), "input");
  const OffsetParams& A1 = plan.A1();
  const OffsetParams& A2 = plan.A2();
  const Grid2D& in = plan.input();
  QField g(in);
  for (std::size_t p = 0; p < in.n1; ++p) {
    const Quaternion l = axis_exp(plan.lambda(), in.t1(p) * xi1);
    for (std::size_t q = 0; q < in.n2; ++q) g(p, q) = l * f(p, q) * axis_exp(plan.mu(), in.t2(q) * xi2);
  }
  QField lhs = qolct_forward(g, plan);

  const Grid2D& out = plan.output();
  Grid2D back = out;
  back.center1 -= A1.b * xi1;
  back.center2 -= A2.b * xi2;
  const QField base = qolct_forward(f, plan.with_output(back));
  QField rhs(out);
  for (std::size_t a = 0; a < out.n1; ++a) {
    const Quaternion l = axis_exp(plan.lambda(), modulation_phase(A1, xi1, out.t1(a), phase));
    for (std::size_t b = 0; b < out.n2; ++b) {
      rhs(a, b) = l * base(a, b) * axis_exp(plan.mu(), modulation_phase(A2, xi2, out.t2(b), phase));
    }
  }
  return finish_report(std::move(lhs), std::move(rhs));
}

MomentReport moment_identity_check(const QField& f, const QolctPlan& plan, GridAxis axis, int fd_order) {
  require_grid(f, plan.input(), "input");
  MomentReport rep;
  rep.axis = axis;
  const Grid2D& out = plan.output();

  const ComponentQuartet quartet = qolct_quartet(f, plan);
  const QField transform = qolct_forward(f, plan);
  std::vector<double> wq(out.size()), wm(out.size());
  for (std::size_t a = 0; a < out.n1; ++a) {
    for (std::size_t b = 0; b < out.n2; ++b) {
      const double u = axis == GridAxis::first ? out.t1(a) : out.t2(b);
      const std::size_t idx = out.index(a, b);
      const double qn = quartet_norm_pointwise(quartet, idx);
      wq[idx] = u * u * qn * qn;
      wm[idx] = u * u * norm2(transform[idx]);
    }
  }
  rep.lhs = integrate_real(out, wq);
  rep.lhs_modulus = integrate_real(out, wm);

  const OffsetParams& A = plan.params(axis);
  const Grid2D& in = plan.input();
  const QField df = partial_derivative(f, axis, fd_order);
  std::vector<double> r(in.size());
  for (std::size_t p = 0; p < in.n1; ++p) {
    for (std::size_t q = 0; q < in.n2; ++q) {
      const std::size_t idx = in.index(p, q);
      const double t = axis == GridAxis::first ? in.t1(p) : in.t2(q);
      const double w = (A.a * t + A.tau) / A.b;
      const Quaternion term = axis == GridAxis::first ? (plan.lambda().q() * w) * f[idx] : f[idx] * (plan.mu().q() * w);
      r[idx] = norm2(term + df[idx]);
    }
  }
  rep.rhs = A.b * A.b * integrate_real(in, r);
  const double scale = std::abs(rep.rhs) > 0.0 ? std::abs(rep.rhs) : 1.0;
  rep.relative_error = std::abs(rep.lhs - rep.rhs) / scale;
  rep.relative_error_modulus = std::abs(rep.lhs_modulus - rep.rhs) / scale;
  return rep;
}

}  // namespace qolct

#include "qolct/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "qolct/error.hpp"

namespace qolct {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPhaseFloor = 1e-12;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(what) + " needs a finite argument > 0");
}

void require_main_branch(const QolctPlan& plan) {
  if (!(plan.A1().b > 0.0) || !(plan.A2().b > 0.0)) throw InvalidArgument("uncertainty evaluators need b1, b2 > 0");
}

void require_ij(const QolctPlan& plan) {
  if (!(plan.lambda() == PureUnit::i()) || !(plan.mu() == PureUnit::j())) {
    throw InvalidArgument("Pitt and logarithmic checks need lambda = i and mu = j");
  }
}

std::vector<double> modulus_squared(const QField& f) {
  std::vector<double> out(f.size());
  for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = norm2(f[idx]);
  return out;
}

std::vector<double> quartet_squared(const ComponentQuartet& q) {
  std::vector<double> out(q.grid().size());
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const double n = quartet_norm_pointwise(q, idx);
    out[idx] = n * n;
  }
  return out;
}

// Integral of weight(x1, x2) * values over the grid.
template <class W>
double weighted_integral(const Grid2D& g, const std::vector<double>& values, W weight) {
  std::vector<double> terms(values.size());
  for (std::size_t p = 0; p < g.n1; ++p) {
    for (std::size_t q = 0; q < g.n2; ++q) {
      const std::size_t idx = g.index(p, q);
      terms[idx] = values[idx] == 0.0 ? 0.0 : weight(g.t1(p), g.t2(q)) * values[idx];
    }
  }
  return integrate_real(g, terms);
}

Grid2D scaled_grid(const Grid2D& g, double s1, double s2) {
  Grid2D r = g;
  r.center1 *= s1;
  r.center2 *= s2;
  r.spacing1 *= s1;
  r.spacing2 *= s2;
  return r;
}

void require_no_origin_sample(const Grid2D& g, const char* what) {
  for (std::size_t p = 0; p < g.n1; ++p) {
    if (g.t1(p) != 0.0) continue;
    for (std::size_t q = 0; q < g.n2; ++q) {
      if (g.t2(q) == 0.0) throw PreconditionViolation(std::string(what) + " grid samples the origin");
    }
  }
}

Quaternion input_chirp(const OffsetParams& A, const PureUnit& axis, double t) {
  return axis_exp(axis, (t * A.tau + 0.5 * A.a * t * t) / A.b);
}

struct RadialBins {
  double width = 0.0;
  std::vector<double> mass, moment;

  RadialBins(double w, double R) : width(w), mass(static_cast<std::size_t>(std::floor(R / w)) + 1), moment(mass.size()) {}
  void add(double r, double m) {
    const auto bin = static_cast<std::size_t>(r / width);
    if (bin >= mass.size()) return;
    mass[bin] += m;
    moment[bin] += m * r;
  }
  double radius(std::size_t bin) const { return mass[bin] > 0.0 ? moment[bin] / mass[bin] : 0.0; }
};

}  // namespace

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  return std::tgamma(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  return boost::math::digamma(x);
}

PittConstants pitt_constants(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw InvalidArgument("Pitt exponent alpha must lie in [0, 2)");
  const double ratio = gamma_fn((2.0 - alpha) / 4.0) / gamma_fn((2.0 + alpha) / 4.0);
  PittConstants c;
  c.alpha = alpha;
  c.D = std::pow(2.0, -alpha) * ratio * ratio;
  c.C = 4.0 * kPi * kPi * c.D;
  return c;
}

double log_up_constant() { return std::numbers::ln2 + digamma(0.5); }

HeisenbergReport heisenberg_report(const QField& f, const QolctPlan& plan, GridAxis axis, int fd_order) {
  require_main_branch(plan);
  const int k = axis == GridAxis::first ? 0 : 1;
  const double b = plan.params(axis).b;
  const Grid2D& in = f.grid();

  const std::vector<double> f2 = modulus_squared(f);
  const double energy = integrate_real(in, f2);

  HeisenbergReport r;
  r.axis = axis;
  r.spatial_spread = weighted_integral(in, f2, [k](double t1, double t2) {
    const double t = k == 0 ? t1 : t2;
    return t * t;
  });

  const auto spectral_weight = [k, b](double x1, double x2) {
    const double xi = (k == 0 ? x1 : x2) / (2.0 * kPi * b);
    return xi * xi;
  };
  const Grid2D& out = plan.output();
  r.spectral_spread = weighted_integral(out, quartet_squared(qolct_quartet(f, plan)), spectral_weight);
  r.spectral_spread_modulus = weighted_integral(out, modulus_squared(qolct_forward(f, plan)), spectral_weight);
  r.base_bound = energy * energy / (16.0 * kPi * kPi);

  // Unit phase of h. The u-dependent factors of h are unit constants on either
  // side and drop out of |t_k dw/dt_k|_Q.
  QField w = chirp_premultiply(f, plan);
  const double floor = kPhaseFloor * max_abs(w);
  for (Quaternion& v : w.samples()) {
    const double n = norm(v);
    v = n > floor ? v / n : Quaternion{};
  }
  const QField dw = partial_derivative(w, axis, fd_order);
  std::vector<double> cov_terms(f.size());
  for (std::size_t p = 0; p < in.n1; ++p) {
    for (std::size_t q = 0; q < in.n2; ++q) {
      const std::size_t idx = in.index(p, q);
      const double t = k == 0 ? in.t1(p) : in.t2(q);
      cov_terms[idx] = f2[idx] * std::abs(t) * norm(dw[idx]);
    }
  }
  r.cov = integrate_real(in, cov_terms) / (2.0 * kPi);

  r.lhs = r.spatial_spread * r.spectral_spread;
  r.rhs = r.base_bound + r.cov * r.cov;
  r.gap = r.lhs - r.rhs;
  r.lhs_modulus = r.spatial_spread * r.spectral_spread_modulus;
  r.gap_modulus = r.lhs_modulus - r.rhs;
  return r;
}

EnvelopeFit hardy_envelope_fit(const QField& g, double floor) {
  const double cutoff = floor * max_abs(g);
  const Grid2D& grid = g.grid();
  std::vector<double> xs, ys;
  for (std::size_t p = 0; p < grid.n1; ++p) {
    for (std::size_t q = 0; q < grid.n2; ++q) {
      const double m = norm(g(p, q));
      if (!(m > cutoff) || m == 0.0) continue;
      xs.push_back(grid.t1(p) * grid.t1(p) + grid.t2(q) * grid.t2(q));
      ys.push_back(std::log(m));
    }
  }
  if (xs.size() < 3) throw PreconditionViolation("envelope fit needs at least 3 samples above the floor");

  const double n = static_cast<double>(xs.size());
  const double mx = pairwise_sum(xs) / n;
  const double my = pairwise_sum(ys) / n;
  std::vector<double> sxx(xs.size()), sxy(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx[i] = (xs[i] - mx) * (xs[i] - mx);
    sxy[i] = (xs[i] - mx) * (ys[i] - my);
  }
  const double vxx = pairwise_sum(sxx);
  if (!(vxx > 0.0)) throw PreconditionViolation("envelope fit needs samples at more than one radius");
  const double slope = pairwise_sum(sxy) / vxx;
  const double intercept = my - slope * mx;

  std::vector<double> res(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + slope * xs[i]);
    res[i] = e * e;
  }
  EnvelopeFit fit;
  fit.alpha = -slope;
  fit.C = std::exp(intercept);
  fit.residual = std::sqrt(pairwise_sum(res) / n);
  fit.samples = xs.size();
  return fit;
}

QField rescaled_spectrum(const QField& spectrum, const QolctPlan& plan) {
  require_main_branch(plan);
  return spectrum.relabeled(scaled_grid(spectrum.grid(), 1.0 / plan.A1().b, 1.0 / plan.A2().b));
}

HardyReport hardy_check(const QField& f, const QolctPlan& plan, double floor) {
  require_main_branch(plan);
  HardyReport r;
  r.signal = hardy_envelope_fit(f, floor);
  r.spectrum = hardy_envelope_fit(rescaled_spectrum(qolct_forward(f, plan), plan), floor);
  r.product = r.signal.alpha * r.spectrum.alpha;

  const Grid2D& g = f.grid();
  const QField h = chirp_premultiply(f, plan);
  std::vector<Quaternion> num(f.size());
  std::vector<double> den(f.size());
  for (std::size_t p = 0; p < g.n1; ++p) {
    for (std::size_t q = 0; q < g.n2; ++q) {
      const std::size_t idx = g.index(p, q);
      const double G = std::exp(-r.signal.alpha * (g.t1(p) * g.t1(p) + g.t2(q) * g.t2(q)));
      num[idx] = G * h[idx];
      den[idx] = G * G;
    }
  }
  r.amplitude = pairwise_sum(num) / pairwise_sum(den);

  QField model(g);
  for (std::size_t p = 0; p < g.n1; ++p) {
    const Quaternion left = conj(input_chirp(plan.A1(), plan.lambda(), g.t1(p))) * r.amplitude;
    for (std::size_t q = 0; q < g.n2; ++q) {
      const double G = std::exp(-r.signal.alpha * (g.t1(p) * g.t1(p) + g.t2(q) * g.t2(q)));
      model(p, q) = G * left * conj(input_chirp(plan.A2(), plan.mu(), g.t2(q)));
    }
  }
  r.reconstruction_error = relative_l2_distance(model, f);
  return r;
}

double beurling_integral(const QField& f, const ComponentQuartet& quartet, const QolctPlan& plan, double d,
                         double R) {
  require_main_branch(plan);
  if (!(d >= 0.0) || !(R > 0.0)) throw InvalidArgument("Beurling integral needs d >= 0 and R > 0");
  const Grid2D& in = f.grid();
  const Grid2D u = scaled_grid(quartet.grid(), 1.0 / plan.A1().b, 1.0 / plan.A2().b);
  const double reach = std::min({in.max_abs(GridAxis::first), in.max_abs(GridAxis::second),
                                 u.max_abs(GridAxis::first), u.max_abs(GridAxis::second)});
  if (R > reach) throw PreconditionViolation("Beurling truncation radius exceeds the sampled grids");

  RadialBins tb(0.25 * std::min(in.spacing1, in.spacing2), R);
  for (std::size_t p = 0; p < in.n1; ++p) {
    for (std::size_t q = 0; q < in.n2; ++q) {
      tb.add(std::hypot(in.t1(p), in.t2(q)), norm(f(p, q)) * in.cell_area());
    }
  }
  RadialBins ub(0.25 * std::min(u.spacing1, u.spacing2), R);
  for (std::size_t p = 0; p < u.n1; ++p) {
    for (std::size_t q = 0; q < u.n2; ++q) {
      ub.add(std::hypot(u.t1(p), u.t2(q)), quartet_norm_pointwise(quartet, u.index(p, q)) * u.cell_area());
    }
  }

  std::vector<double> rows(tb.mass.size());
  std::vector<double> terms(ub.mass.size());
  for (std::size_t i = 0; i < tb.mass.size(); ++i) {
    if (tb.mass[i] == 0.0) continue;
    const double r = tb.radius(i);
    for (std::size_t j = 0; j < ub.mass.size(); ++j) {
      const double s = ub.radius(j);
      terms[j] = ub.mass[j] == 0.0 ? 0.0 : ub.mass[j] * std::exp(r * s) / std::pow(1.0 + r + s, d);
    }
    rows[i] = tb.mass[i] * pairwise_sum(terms);
  }
  return pairwise_sum(rows);
}

BeurlingReport beurling_report(const QField& f, const QolctPlan& plan, double d, double R) {
  const ComponentQuartet quartet = qolct_quartet(f, plan);
  BeurlingReport r;
  r.d = d;
  r.R = R;
  r.value = beurling_integral(f, quartet, plan, d, R);
  r.value_half = beurling_integral(f, quartet, plan, d, 0.5 * R);
  r.growth = r.value_half > 0.0 ? r.value / r.value_half : 0.0;
  return r;
}

PittReport pitt_check(const QField& f, const QolctPlan& plan, double alpha) {
  require_ij(plan);
  require_main_branch(plan);
  PittReport r;
  r.constants = pitt_constants(alpha);
  const double b1 = plan.A1().b, b2 = plan.A2().b;
  if (alpha > 0.0) require_no_origin_sample(plan.output(), "transform");
  r.lhs = weighted_integral(plan.output(), quartet_squared(qolct_quartet(f, plan)), [=](double z1, double z2) {
    return alpha == 0.0 ? 1.0 : std::pow(std::hypot(z1 / b1, z2 / b2), -alpha);
  });
  r.rhs = r.constants.D * weighted_integral(f.grid(), modulus_squared(f), [=](double t1, double t2) {
            return alpha == 0.0 ? 1.0 : std::pow(std::hypot(t1, t2), alpha);
          });
  r.slack = r.rhs - r.lhs;
  return r;
}

LogUpReport log_up_check(const QField& f, const QolctPlan& plan) {
  require_ij(plan);
  require_main_branch(plan);
  require_no_origin_sample(plan.output(), "transform");
  require_no_origin_sample(f.grid(), "signal");
  const double b1 = plan.A1().b, b2 = plan.A2().b;
  const std::vector<double> f2 = modulus_squared(f);
  LogUpReport r;
  r.constant = log_up_constant();
  r.spectral_term = weighted_integral(plan.output(), quartet_squared(qolct_quartet(f, plan)),
                                      [=](double z1, double z2) { return std::log(std::hypot(z1 / b1, z2 / b2)); });
  r.spatial_term = weighted_integral(f.grid(), f2, [](double t1, double t2) { return std::log(std::hypot(t1, t2)); });
  r.energy = integrate_real(f.grid(), f2);
  r.lhs = r.spectral_term + r.spatial_term;
  r.rhs = r.constant * r.energy;
  r.slack = r.lhs - r.rhs;
  return r;
}

}  // namespace qolct

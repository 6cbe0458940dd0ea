#include "qolct/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qolct/corpus.hpp"
#include "qolct/oracle.hpp"
#include "qolct/qft.hpp"
#include "qolct/qolct.hpp"
#include "qolct/uncertainty.hpp"

namespace qolct::verify {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  void add(std::string name, json params, double observed, double tolerance) {
    const bool pass = std::isfinite(observed) && observed <= tolerance;
    checks_.push_back({std::move(name), std::move(params), observed, tolerance, pass});
  }
  // Records a check whose evaluation threw: a failure carrying the message.
  template <class F>
  void guarded(const std::string& name, json params, double tolerance, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      params["error"] = e.what();
      checks_.push_back({name, std::move(params), std::nan(""), tolerance, false});
    }
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

json matrix_json(const OffsetParams& A) { return json::array({A.a, A.b, A.c, A.d, A.tau, A.eta}); }
json axis_json(const PureUnit& u) { return json::array({u.q().x, u.q().y, u.q().z}); }
json set_json(const ParamSet& ps) {
  return {{"A1", matrix_json(ps.A1)}, {"A2", matrix_json(ps.A2)}, {"lambda", axis_json(ps.lambda)}, {"mu", axis_json(ps.mu)}};
}

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

PureUnit random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return PureUnit::from_vector(n(rng), n(rng), n(rng));
}

ParamSet qft_case_set() { return {OffsetParams::qft_case(), OffsetParams::qft_case()}; }

double max_relative(const QField& got, const QField& exact) { return max_abs_difference(got, exact) / max_abs(exact); }

void algebra_suite(Recorder& rec, std::mt19937_64& rng) {
  double assoc = 0, mult = 0, conj_err = 0, inv = 0, square = 0, unit_exp = 0, polar_err = 0, root = 0;
  for (int n = 0; n < 1000; ++n) {
    const Quaternion p = random_quaternion(rng), q = random_quaternion(rng), r = random_quaternion(rng);
    const double scale = norm(p) * norm(q) * norm(r);
    assoc = std::max(assoc, distance((p * q) * r, p * (q * r)) / scale);
    mult = std::max(mult, std::abs(norm(p * q) - norm(p) * norm(q)) / (norm(p) * norm(q)));
    conj_err = std::max(conj_err, distance(conj(p * q), conj(q) * conj(p)) / (norm(p) * norm(q)));
    inv = std::max(inv, distance(p * inverse(p), Quaternion::one()));
    const PureUnit u = random_unit(rng);
    square = std::max(square, distance(u.q() * u.q(), Quaternion(-1.0)));
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    unit_exp = std::max(unit_exp, std::abs(norm(axis_exp(u, angle(rng))) - 1.0));
    polar_err = std::max(polar_err, distance(from_polar(polar(p)), p) / norm(p));
    const Quaternion s = inv_sqrt_unit(u);
    root = std::max(root, distance(s * s * u.q(), Quaternion::one()));
  }
  const json params = {{"samples", 1000}};
  rec.add("quaternion.associativity", params, assoc, 1e-14);
  rec.add("quaternion.norm_multiplicative", params, mult, 1e-14);
  rec.add("quaternion.conj_reverses_products", params, conj_err, 1e-14);
  rec.add("quaternion.inverse", params, inv, 1e-14);
  rec.add("pure_unit.squares_to_minus_one", params, square, 1e-15);
  rec.add("axis_exp.unit_modulus", params, unit_exp, 1e-15);
  rec.add("polar.round_trip", params, polar_err, 1e-14);
  rec.add("inv_sqrt_unit.square", params, root, 1e-15);
}

void qft_suite(Recorder& rec, std::mt19937_64& rng) {
  {
    const Grid2D g{16, 16, 0.7, -0.3, 0.3, 0.2};
    const QField f = random_field(g, rng);
    const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
    rec.add("qft.fast_matches_direct", {{"grid", 16}, {"axes", "ij"}},
            max_abs_difference(qft_fast_ij(f, plan), qft_direct(f, plan)), 1e-10);
    const PureUnit lambda = random_unit(rng), mu = random_unit(rng);
    const QftPlan general = QftPlan::forward(g, lambda, mu);
    rec.add("qft.fast_matches_direct", {{"grid", 16}, {"lambda", axis_json(lambda)}, {"mu", axis_json(mu)}},
            max_abs_difference(qft(f, general), qft_direct(f, general)), 1e-10);
  }
  const Grid2D g = Grid2D::centered(128, 16.0);
  const PureUnit lambda = random_unit(rng), mu = random_unit(rng);
  for (const CorpusSignal& s : signal_corpus(g, lambda, mu)) {
    const json params = {{"signal", s.name}, {"grid", 128}, {"lambda", axis_json(lambda)}, {"mu", axis_json(mu)}};
    const QftPlan plan = QftPlan::forward(g, lambda, mu);
    const QField spectrum = qft(s.field, plan);
    rec.add("qft.inversion", params, relative_l2_distance(iqft(spectrum, plan.inverted()), s.field), 1e-7);
    const double ratio = std::pow(quartet_l2_norm(qft_quartet(s.field, plan)) / l2_norm(s.field), 2);
    rec.add("qft.plancherel_4pi2", params, std::abs(ratio / (4 * kPi * kPi) - 1.0), 1e-6);
  }
  const QField gauss = synth_gaussian(g, 0.5, 0.5, {0.8, -0.6, 0.3, 1.1}, lambda, mu);
  const QftPlan plan = QftPlan::forward(g, lambda, mu);
  for (auto [m, n] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 0}, std::pair{0, 2}}) {
    rec.add("qft.derivative_identity", {{"m", m}, {"n", n}, {"grid", 128}},
            derivative_identity_check(gauss, plan, m, n).relative_error, 1e-5);
  }
}

void qolct_suite(Recorder& rec, std::mt19937_64& rng) {
  {
    const Grid2D g = Grid2D::centered(16, 4.0);
    for (int n = 0; n < 20; ++n) {
      const ParamSet ps = random_param_set(rng, n % 3 != 2);
      const json params = {{"set", n}, {"grid", 16}, {"params", set_json(ps)}};
      rec.guarded("qolct.forward_matches_direct", params, 1e-9, [&] {
        const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, g);
        const QField f = random_field(g, rng);
        rec.add("qolct.forward_matches_direct", params,
                max_abs_difference(qolct_forward(f, plan), qolct_direct(f, plan)), 1e-9);
      });
    }
  }
  const Grid2D g = Grid2D::centered(128, 12.0);
  for (int n = 0; n < 2; ++n) {
    const ParamSet ps = random_param_set(rng, n == 0);
    rec.guarded("qolct.plancherel", {{"set", n}}, 1e-6, [&] {
      const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, g);
      for (const CorpusSignal& s : signal_corpus(g, ps.lambda, ps.mu)) {
        const json params = {{"signal", s.name}, {"grid", 128}, {"params", set_json(ps)}};
        rec.add("qolct.quartet_plancherel", params,
                std::abs(quartet_l2_norm(qolct_quartet(s.field, plan)) / l2_norm(s.field) - 1.0), 1e-6);
        rec.add("qolct.inversion", params,
                relative_l2_distance(qolct_inverse(qolct_forward(s.field, plan), plan), s.field), 1e-7);
      }
    });
  }
  {
    const Grid2D small = Grid2D::centered(32, 8.0);
    const QField f = random_field(small, rng);
    const PureUnit lambda = PureUnit::i(), mu = PureUnit::j();
    const QolctPlan plan(OffsetParams::qft_case(), OffsetParams::qft_case(), lambda, mu, small);
    const QField spectrum = qft(f, QftPlan::forward(small, lambda, mu));
    QField expect(plan.output());
    for (std::size_t idx = 0; idx < expect.size(); ++idx) {
      expect[idx] = (1 / (2 * kPi)) * (inv_sqrt_unit(lambda) * spectrum[idx] * inv_sqrt_unit(mu));
    }
    rec.add("qolct.qft_reduction", {{"grid", 32}}, max_abs_difference(qolct_forward(f, plan), expect), 1e-10);
  }

  const Grid2D wide = Grid2D::centered(256, 16.0);
  const QField q = synth_gaussian(wide, 1.0, 0.5, {0.8, -0.6, 0.3, 1.1}, PureUnit::i(), PureUnit::j());
  ParamSet general;
  general.A1 = OffsetParams::make(1, 1, 1, 2, 0.3, -0.2);
  general.A2 = OffsetParams::make(0.5, 1.5, -0.5, 0.5, -0.6, 0.4);
  for (const ParamSet& ps : {qft_case_set(), general}) {
    const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, wide);
    const json params = {{"grid", 256}, {"params", set_json(ps)}};
    json shift = params;
    shift["k"] = {0.5, -0.25};
    rec.add("qolct.shift_covariance", shift, shift_covariance_check(q, plan, 0.5, -0.25).relative_error, 1e-6);
    json mod = params;
    mod["xi"] = {1.0, -0.5};
    rec.add("qolct.modulation_covariance", mod, modulation_covariance_check(q, plan, 1.0, -0.5).relative_error, 1e-6);
    for (GridAxis axis : {GridAxis::first, GridAxis::second}) {
      json m = params;
      m["axis"] = static_cast<int>(axis);
      rec.add("qolct.moment_identity", m, moment_identity_check(q, plan, axis).relative_error, 1e-5);
    }
  }
}

void oracle_suite(Recorder& rec, std::mt19937_64& rng) {
  const GaussianSpec spec{1.0, 0.5, {0.8, -0.6, 0.3, 1.1}};
  const Grid2D g = Grid2D::centered(256, 16.0);
  std::vector<ParamSet> sets;
  sets.push_back({OffsetParams::make(1, 1, 1, 2, 0.3, -0.2), OffsetParams::make(1, 1, 1, 2, 0.3, -0.2)});
  for (int n = 0; n < 4; ++n) sets.push_back(random_param_set(rng, n % 2 == 0));
  for (const ParamSet& ps : sets) {
    const json params = {{"grid", 256}, {"params", set_json(ps)}};
    rec.guarded("oracle.gaussian_closed_form", params, 1e-6, [&] {
      const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, g);
      const QField exact = gaussian_qolct_closed_form(spec, ps.A1, ps.A2, ps.lambda, ps.mu, plan.output());
      rec.add("oracle.gaussian_closed_form", params, max_relative(qolct_forward(spec.sample(g, ps.lambda, ps.mu), plan), exact),
              1e-6);
    });
  }
  {
    const Grid2D small = Grid2D::centered(128, 12.0);
    const QolctPlan plan(sets[0].A1, sets[0].A2, PureUnit::i(), PureUnit::j(), small);
    const QField exact = gaussian_qolct_closed_form(spec, sets[0].A1, sets[0].A2, PureUnit::i(), PureUnit::j(), plan.output());
    rec.add("oracle.closed_form_matches_direct", {{"grid", 128}, {"params", set_json(sets[0])}},
            max_relative(qolct_direct(spec.sample(small, PureUnit::i(), PureUnit::j()), plan), exact), 1e-6);
  }
  {
    const Quaternion z{1, 1, 0, 0};
    const Quaternion value = gaussian_integral_complex_offset(z, Quaternion{});
    const int n = 4000;
    const double h = 20.0 / n;
    std::complex<double> acc = 0.0;
    const std::complex<double> zc(1.0, 1.0), oc(0.3, -0.4);
    for (int p = 0; p < n; ++p) {
      const double t = -10 + (p + 0.5) * h;
      acc += std::exp(-zc * (t + oc) * (t + oc)) * h;
    }
    rec.add("oracle.gaussian_integral_offset", {{"z", {1, 1}}, {"offset", {0.3, -0.4}}},
            std::hypot(acc.real() - value.w, acc.imag() - value.x), 1e-10);
  }
}

void uncertainty_suite(Recorder& rec, std::mt19937_64& rng) {
  double gamma_rec = 0;
  for (double x = 0.25; x <= 10.0; x += 0.125) gamma_rec = std::max(gamma_rec, std::abs(gamma_fn(x + 1) / (x * gamma_fn(x)) - 1));
  rec.add("gamma.recurrence", {{"range", {0.25, 10}}}, gamma_rec, 1e-13);
  rec.add("digamma.half", {}, std::abs(digamma(0.5) + std::numbers::egamma + 2 * std::numbers::ln2), 1e-12);
  rec.add("logup.constant", {}, std::abs(log_up_constant() + std::numbers::egamma + std::numbers::ln2), 1e-12);
  {
    const double x = 0.5, h = 1e-2;
    const auto d = [x](double s) { return (std::lgamma(x + s) - std::lgamma(x - s)) / (2 * s); };
    const double r1 = (4 * d(h / 2) - d(h)) / 3, r2 = (4 * d(h / 4) - d(h / 2)) / 3;
    rec.add("logup.constant_numeric_derivative", {}, std::abs(std::numbers::ln2 + (16 * r2 - r1) / 15 - log_up_constant()),
            1e-8);
  }
  rec.add("pitt.C0", {}, std::abs(pitt_constants(0.0).C - 4 * kPi * kPi), 1e-12);
  rec.add("pitt.D0", {}, std::abs(pitt_constants(0.0).D - 1.0), 1e-12);
  rec.add("pitt.continuity", {{"alpha", 1e-6}}, std::abs(pitt_constants(1e-6).C - 4 * kPi * kPi), 1e-3);

  const Grid2D g = Grid2D::centered(256, 16.0);
  {
    const QolctPlan plan(OffsetParams::qft_case(), OffsetParams::qft_case(), PureUnit::i(), PureUnit::j(), g);
    const HeisenbergReport r = heisenberg_report(synth_gaussian(g, 0.5, 0.5), plan, GridAxis::first);
    rec.add("heisenberg.classical_equality", {{"grid", 256}}, std::abs(r.gap) / r.rhs, 1e-2);
  }
  for (int n = 0; n < 2; ++n) {
    const ParamSet ps = n == 0 ? qft_case_set() : random_param_set(rng, true);
    rec.guarded("uncertainty.set", {{"params", set_json(ps)}}, 0.0, [&] {
      const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, g);
      for (const CorpusSignal& s : signal_corpus(g, ps.lambda, ps.mu)) {
        const json params = {{"signal", s.name}, {"grid", 256}, {"params", set_json(ps)}};
        for (GridAxis axis : {GridAxis::first, GridAxis::second}) {
          const HeisenbergReport r = heisenberg_report(s.field, plan, axis);
          json p = params;
          p["axis"] = static_cast<int>(axis);
          rec.add("heisenberg.weak_bound", p, -(r.lhs - r.base_bound) / r.rhs, 1e-6);
          rec.add("heisenberg.cov_bound_modulus", p, -r.gap_modulus / r.rhs, 1e-6);
        }
        const PittReport zero = pitt_check(s.field, plan, 0.0);
        rec.add("pitt.equality_alpha0", params, std::abs(zero.lhs / zero.rhs - 1), 1e-6);
        for (double alpha : {0.5, 1.0, 1.5}) {
          const PittReport r = pitt_check(s.field, plan, alpha);
          json p = params;
          p["alpha"] = alpha;
          rec.add("pitt.slack", p, -r.slack / r.rhs, 1e-6);
        }
        const LogUpReport l = log_up_check(s.field, plan);
        rec.add("logup.slack", params, -l.slack / l.energy, 1e-5);
      }
      const Quaternion A{0.7, -0.4, 0.9, 0.2};
      const HardyReport h = hardy_check(hardy_critical_signal(g, ps, 0.6, A), plan);
      const json params = {{"alpha", 0.6}, {"grid", 256}, {"params", set_json(ps)}};
      rec.add("hardy.critical_product", params, std::abs(h.product - 0.25), 1e-3);
      rec.add("hardy.reconstruction", params, h.reconstruction_error, 1e-4);
    });
  }
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::algebra, Suite::qft, Suite::qolct, Suite::oracle, Suite::uncertainty, Suite::all}) {
    if (suite_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::algebra: return "algebra";
    case Suite::qft: return "qft";
    case Suite::qolct: return "qolct";
    case Suite::oracle: return "oracle";
    case Suite::uncertainty: return "uncertainty";
    case Suite::all: return "all";
  }
  return "";
}

std::vector<Check> run(Suite suite, std::uint64_t seed) {
  Recorder rec;
  // Each suite draws from its own stream so that `all` reproduces the single-suite runs.
  const auto stream = [seed](int k) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(k)); };
  auto want = [suite](Suite s) { return suite == Suite::all || suite == s; };
  if (want(Suite::algebra)) {
    auto rng = stream(1);
    algebra_suite(rec, rng);
  }
  if (want(Suite::qft)) {
    auto rng = stream(2);
    qft_suite(rec, rng);
  }
  if (want(Suite::qolct)) {
    auto rng = stream(3);
    qolct_suite(rec, rng);
  }
  if (want(Suite::oracle)) {
    auto rng = stream(4);
    oracle_suite(rec, rng);
  }
  if (want(Suite::uncertainty)) {
    auto rng = stream(5);
    uncertainty_suite(rec, rng);
  }
  return rec.take();
}

json to_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks) {
    out.push_back({{"check", c.check}, {"params", c.params}, {"observed", c.observed}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return out;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace qolct::verify

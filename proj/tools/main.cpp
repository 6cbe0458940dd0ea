#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qolct/corpus.hpp"
#include "qolct/error.hpp"
#include "qolct/fault.hpp"
#include "qolct/io.hpp"
#include "qolct/qolct.hpp"
#include "qolct/uncertainty.hpp"
#include "qolct/verify.hpp"

using namespace qolct;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, io_failure = 3, numerics = 4 };

json grid_json(const Grid2D& g) {
  return {{"n1", g.n1}, {"n2", g.n2}, {"center1", g.center1}, {"center2", g.center2}, {"spacing1", g.spacing1},
          {"spacing2", g.spacing2}};
}

Grid2D grid_from_json(const json& j) {
  Grid2D g;
  g.n1 = j.at("n1").get<std::size_t>();
  g.n2 = j.at("n2").get<std::size_t>();
  g.center1 = j.at("center1").get<double>();
  g.center2 = j.at("center2").get<double>();
  g.spacing1 = j.at("spacing1").get<double>();
  g.spacing2 = j.at("spacing2").get<double>();
  g.validate();
  return g;
}

PureUnit parse_axis(const std::vector<double>& v, const char* name) {
  if (v.size() != 3) throw InvalidArgument(std::string("--") + name + " needs three components");
  return PureUnit::from_vector(v[0], v[1], v[2]);
}

std::string summary(const Grid2D& g) {
  std::ostringstream s;
  s << g.n1 << " x " << g.n2 << " grid, centers (" << g.center1 << ", " << g.center2 << "), spacings (" << g.spacing1
    << ", " << g.spacing2 << ")";
  return s.str();
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text(out, text);
  }
}

// --- synth ---------------------------------------------------------------

struct SynthOptions {
  std::string kind;
  std::size_t n = 256, n1 = 0, n2 = 0;
  double extent = 20.0, extent1 = 0.0, extent2 = 0.0;
  double alpha1 = 0.5, alpha2 = 0.5;
  double beta11 = 1.0, beta12 = 0.0, beta21 = 1.0, beta22 = 0.0;
  double gamma = 0.0;
  std::vector<double> lambda{1, 0, 0}, mu{0, 1, 0};
  std::string out;
};

int run_synth(const SynthOptions& o) {
  if (!(o.alpha1 > 0.0) || !(o.alpha2 > 0.0)) throw InvalidArgument("--alpha1 and --alpha2 must be > 0");
  const Grid2D g = Grid2D::centered(o.n1 ? o.n1 : o.n, o.n2 ? o.n2 : o.n, o.extent1 > 0 ? o.extent1 : o.extent,
                                    o.extent2 > 0 ? o.extent2 : o.extent);
  g.validate();
  const PureUnit lambda = parse_axis(o.lambda, "lambda"), mu = parse_axis(o.mu, "mu");
  const GaussianAmplitude beta{o.beta11, o.beta12, o.beta21, o.beta22};
  const QField f = o.kind == "gaussian" ? synth_gaussian(g, o.alpha1, o.alpha2, beta, lambda, mu)
                                        : chirped_gaussian(g, o.alpha1, o.alpha2, beta, lambda, mu, o.gamma);
  io::write_signal(o.out, f);
  std::cout << o.kind << ": " << summary(g) << ", max |f| = " << max_abs(f) << ", wrote " << o.out << "\n";
  return ok;
}

// --- transform -----------------------------------------------------------

struct TransformOptions {
  std::string in, csv, params, out, branch = "main", signal_grid;
  bool inverse = false;
  std::size_t out_n1 = 0, out_n2 = 0;
  double out_extent1 = 0.0, out_extent2 = 0.0;
};

QField load_input(const std::string& in, const std::string& csv) {
  if (!in.empty() && !csv.empty()) throw InvalidArgument("give either --in or --csv, not both");
  if (!csv.empty()) return io::read_csv_signal(csv);
  if (in.empty()) throw InvalidArgument("an input signal is required (--in or --csv)");
  return io::read_signal(in);
}

// Signal grid matching the default output grid of a forward plan, centered at 0.
Grid2D signal_grid_for(const Grid2D& spectrum, const ParamSet& ps) {
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  Grid2D g;
  g.n1 = spectrum.n1;
  g.n2 = spectrum.n2;
  g.spacing1 = kTwoPi * ps.A1.b / (static_cast<double>(spectrum.n1) * spectrum.spacing1);
  g.spacing2 = kTwoPi * ps.A2.b / (static_cast<double>(spectrum.n2) * spectrum.spacing2);
  return g;
}

int run_transform(const TransformOptions& o) {
  const ParamSet ps = io::read_params(o.params);
  const QField input = load_input(o.in, o.csv);
  json side = {{"params", json::parse(io::format_params(ps))}, {"branch", o.branch}, {"inverse", o.inverse}};
  QField output;

  if (o.branch != "main") {
    if (o.inverse) throw InvalidArgument("--inverse is only available on the main branch");
    DegenerateBranch which;
    if (o.branch == "b1-zero") {
      which = DegenerateBranch::b1_zero;
    } else if (o.branch == "b2-zero") {
      which = DegenerateBranch::b2_zero;
    } else if (o.branch == "both-zero") {
      which = DegenerateBranch::both_zero;
    } else {
      throw InvalidArgument("--branch must be main, b1-zero, b2-zero or both-zero");
    }
    const Grid2D& g = input.grid();
    Grid2D out = g;
    if (o.out_n1) out.n1 = o.out_n1;
    if (o.out_n2) out.n2 = o.out_n2;
    if (o.out_extent1 > 0) out.spacing1 = o.out_extent1 / static_cast<double>(out.n1);
    if (o.out_extent2 > 0) out.spacing2 = o.out_extent2 / static_cast<double>(out.n2);
    const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, g, out);
    output = qolct_degenerate(input, plan, which);
    side["input_grid"] = grid_json(g);
    side["output_grid"] = grid_json(out);
  } else if (!o.inverse) {
    const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, input.grid());
    output = qolct_forward(input, plan);
    const double norm_in = l2_norm(input);
    side["input_grid"] = grid_json(plan.input());
    side["output_grid"] = grid_json(plan.output());
    side["l2_in"] = norm_in;
    side["l2_out"] = l2_norm(output);
    side["quartet_l2_out"] = quartet_l2_norm(qolct_quartet(input, plan));
    side["plancherel_ratio"] = norm_in > 0 ? side["quartet_l2_out"].get<double>() / norm_in : 1.0;
    side["roundtrip_relative_error"] =
        norm_in > 0 ? relative_l2_distance(qolct_inverse(output, plan), input) : max_abs(qolct_inverse(output, plan));
  } else {
    Grid2D signal = signal_grid_for(input.grid(), ps);
    if (!o.signal_grid.empty()) signal = grid_from_json(json::parse(io::read_text(o.signal_grid)).at("input_grid"));
    const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, signal);
    if (!(plan.output() == input.grid())) {
      throw InvalidArgument("spectrum grid does not match the transform grid of the signal grid (" + summary(plan.output()) +
                            ")");
    }
    output = qolct_inverse(input, plan);
    side["input_grid"] = grid_json(input.grid());
    side["output_grid"] = grid_json(signal);
    side["l2_in"] = l2_norm(input);
    side["l2_out"] = l2_norm(output);
  }
  io::write_signal(o.out, output);
  io::write_text(o.out + ".json", side.dump(2) + "\n");
  std::cout << "wrote " << o.out << " (" << summary(output.grid()) << ") and " << o.out << ".json\n";
  return ok;
}

// --- verify --------------------------------------------------------------

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::string fault = "none";
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  const auto suite = verify::parse_suite(o.suite);
  if (!suite) throw InvalidArgument("unknown suite '" + o.suite + "'");
  const auto f = fault::parse(o.fault);
  if (!f) throw InvalidArgument("unknown fault '" + o.fault + "'");
  fault::Scoped scoped(*f);
  const std::vector<verify::Check> checks = verify::run(*suite, o.seed);
  emit(verify::to_json(checks), o.out);
  std::size_t failures = 0;
  for (const verify::Check& c : checks) failures += c.pass ? 0 : 1;
  std::cerr << checks.size() - failures << "/" << checks.size() << " checks passed\n";
  return failures == 0 ? ok : failed;
}

// --- uncertainty ---------------------------------------------------------

struct UncertaintyOptions {
  std::string in, csv, params, which, tsv, out;
  int axis = 0;
  double alpha = 1.0, d = 0.0, R = 0.0, floor = 1e-8;
};

std::string tsv_line(std::initializer_list<double> values) {
  std::ostringstream s;
  s.precision(17);
  bool first = true;
  for (double v : values) {
    s << (first ? "" : "\t") << v;
    first = false;
  }
  s << "\n";
  return s.str();
}

json heisenberg_json(const HeisenbergReport& r) {
  return {{"axis", static_cast<int>(r.axis)}, {"spatial_spread", r.spatial_spread}, {"spectral_spread", r.spectral_spread},
          {"spectral_spread_modulus", r.spectral_spread_modulus}, {"base_bound", r.base_bound}, {"cov", r.cov},
          {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}, {"lhs_modulus", r.lhs_modulus}, {"gap_modulus", r.gap_modulus}};
}

json fit_json(const EnvelopeFit& f) {
  return {{"alpha", f.alpha}, {"C", f.C}, {"residual", f.residual}, {"samples", f.samples}};
}

int run_uncertainty(const UncertaintyOptions& o) {
  const ParamSet ps = io::read_params(o.params);
  if ((o.which == "pitt" || o.which == "logup") && !(ps.lambda == PureUnit::i() && ps.mu == PureUnit::j())) {
    throw InvalidArgument(o.which + " needs lambda = [1,0,0] and mu = [0,1,0] in the parameter file");
  }
  const QField f = load_input(o.in, o.csv);
  const QolctPlan plan(ps.A1, ps.A2, ps.lambda, ps.mu, f.grid());
  json report = {{"which", o.which}, {"params", json::parse(io::format_params(ps))}, {"grid", grid_json(f.grid())}};
  std::string tsv;

  if (o.which == "heisenberg") {
    tsv = "axis\tspatial_spread\tspectral_spread\tbase_bound\tcov\tlhs\trhs\tgap\n";
    json rows = json::array();
    for (GridAxis axis : {GridAxis::first, GridAxis::second}) {
      if (o.axis != 0 && o.axis != static_cast<int>(axis)) continue;
      const HeisenbergReport r = heisenberg_report(f, plan, axis);
      rows.push_back(heisenberg_json(r));
      tsv += tsv_line({static_cast<double>(axis), r.spatial_spread, r.spectral_spread, r.base_bound, r.cov, r.lhs, r.rhs, r.gap});
    }
    report["reports"] = rows;
  } else if (o.which == "hardy") {
    const HardyReport r = hardy_check(f, plan, o.floor);
    report["signal_fit"] = fit_json(r.signal);
    report["spectrum_fit"] = fit_json(r.spectrum);
    report["product"] = r.product;
    report["amplitude"] = {r.amplitude.w, r.amplitude.x, r.amplitude.y, r.amplitude.z};
    report["reconstruction_error"] = r.reconstruction_error;
    tsv = "radius\tlog_modulus\tfitted\n";
    const Grid2D& g = f.grid();
    for (std::size_t p = 0; p < g.n1; ++p) {
      const std::size_t q = g.n2 / 2;
      const double m = norm(f(p, q));
      if (m <= 0) continue;
      const double r2 = g.t1(p) * g.t1(p) + g.t2(q) * g.t2(q);
      tsv += tsv_line({std::sqrt(r2), std::log(m), std::log(r.signal.C) - r.signal.alpha * r2});
    }
  } else if (o.which == "pitt") {
    const PittReport r = pitt_check(f, plan, o.alpha);
    report["alpha"] = o.alpha;
    report["C_alpha"] = r.constants.C;
    report["D_alpha"] = r.constants.D;
    report["lhs"] = r.lhs;
    report["rhs"] = r.rhs;
    report["slack"] = r.slack;
    tsv = "alpha\tlhs\trhs\tslack\n";
    if (!o.tsv.empty()) {
      for (int s = 0; s < 20; ++s) {
        const PittReport sweep = pitt_check(f, plan, 0.1 * s);
        tsv += tsv_line({0.1 * s, sweep.lhs, sweep.rhs, sweep.slack});
      }
    }
  } else if (o.which == "logup") {
    const LogUpReport r = log_up_check(f, plan);
    report["constant_A"] = r.constant;
    report["spectral_term"] = r.spectral_term;
    report["spatial_term"] = r.spatial_term;
    report["energy"] = r.energy;
    report["lhs"] = r.lhs;
    report["rhs"] = r.rhs;
    report["slack"] = r.slack;
    tsv = "# A = " + json(r.constant).dump() + "\nterm\tvalue\n";
    tsv += "spectral\t" + json(r.spectral_term).dump() + "\nspatial\t" + json(r.spatial_term).dump() + "\n";
    tsv += "rhs\t" + json(r.rhs).dump() + "\nslack\t" + json(r.slack).dump() + "\n";
  } else if (o.which == "beurling") {
    const double R = o.R > 0 ? o.R : 0.5 * std::min(f.grid().max_abs(GridAxis::first), f.grid().max_abs(GridAxis::second));
    const BeurlingReport r = beurling_report(f, plan, o.d, R);
    report["d"] = r.d;
    report["R"] = r.R;
    report["value"] = r.value;
    report["value_half"] = r.value_half;
    report["growth"] = r.growth;
    tsv = "R\tvalue\n";
    if (!o.tsv.empty()) {
      const ComponentQuartet q = qolct_quartet(f, plan);
      for (int s = 1; s <= 16; ++s) {
        const double Rs = R * s / 16.0;
        tsv += tsv_line({Rs, beurling_integral(f, q, plan, o.d, Rs)});
      }
    }
  } else {
    throw InvalidArgument("--which must be heisenberg, hardy, pitt, logup or beurling");
  }
  emit(report, o.out);
  if (!o.tsv.empty()) io::write_text(o.tsv, tsv);
  return ok;
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return io_failure;
  } catch (const PreconditionViolation& e) {
    std::cerr << "numerical precondition violated: " << e.what() << "\n";
    return numerics;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion offset linear canonical transforms on sampled signals"};
  app.require_subcommand(1);

  SynthOptions so;
  auto* synth = app.add_subcommand("synth", "Write a synthesized Gaussian signal file");
  synth->add_option("kind", so.kind, "gaussian or chirped-gaussian")->required()->check(CLI::IsMember({"gaussian", "chirped-gaussian"}));
  synth->add_option("--n", so.n, "Samples per axis")->check(CLI::PositiveNumber);
  synth->add_option("--n1", so.n1, "Samples along axis 1 (overrides --n)");
  synth->add_option("--n2", so.n2, "Samples along axis 2 (overrides --n)");
  synth->add_option("--extent", so.extent, "Side length of the square domain")->check(CLI::PositiveNumber);
  synth->add_option("--extent1", so.extent1, "Extent along axis 1");
  synth->add_option("--extent2", so.extent2, "Extent along axis 2");
  synth->add_option("--alpha1", so.alpha1, "Decay along axis 1");
  synth->add_option("--alpha2", so.alpha2, "Decay along axis 2");
  synth->add_option("--beta11", so.beta11);
  synth->add_option("--beta12", so.beta12);
  synth->add_option("--beta21", so.beta21);
  synth->add_option("--beta22", so.beta22);
  synth->add_option("--gamma", so.gamma, "Chirp rate of the right factor e^{mu gamma |t|^2}");
  synth->add_option("--lambda", so.lambda, "Left axis x y z")->expected(3);
  synth->add_option("--mu", so.mu, "Right axis x y z")->expected(3);
  synth->add_option("--out", so.out, "Output signal file")->required();

  TransformOptions to;
  auto* transform = app.add_subcommand("transform", "Apply the transform or its inverse");
  transform->add_option("--in", to.in, "Input signal file");
  transform->add_option("--csv", to.csv, "Input CSV with columns t1,t2,q0,q1,q2,q3");
  transform->add_option("--params", to.params, "Parameter file (JSON)")->required();
  transform->add_flag("--inverse", to.inverse, "Map a spectrum back to the signal domain");
  transform->add_option("--signal-grid", to.signal_grid, "Sidecar of the forward run, for --inverse");
  transform->add_option("--branch", to.branch, "main, b1-zero, b2-zero or both-zero");
  transform->add_option("--out-n1", to.out_n1, "Output samples along axis 1 (degenerate branches)");
  transform->add_option("--out-n2", to.out_n2, "Output samples along axis 2 (degenerate branches)");
  transform->add_option("--out-extent1", to.out_extent1, "Output extent along axis 1 (degenerate branches)");
  transform->add_option("--out-extent2", to.out_extent2, "Output extent along axis 2 (degenerate branches)");
  transform->add_option("--out", to.out, "Output signal file; the sidecar goes to <out>.json")->required();

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites and print a JSON report");
  verify_cmd->add_option("suite", vo.suite, "algebra, qft, qolct, oracle, uncertainty or all");
  verify_cmd->add_option("--seed", vo.seed, "Random seed");
  verify_cmd->add_option("--inject-fault", vo.fault, "none, right-kernel-sign, drop-normalization or kernel-order");
  verify_cmd->add_option("--out", vo.out, "Write the report here instead of stdout");

  UncertaintyOptions uo;
  auto* unc = app.add_subcommand("uncertainty", "Evaluate an uncertainty principle on a signal");
  unc->add_option("--in", uo.in, "Input signal file");
  unc->add_option("--csv", uo.csv, "Input CSV with columns t1,t2,q0,q1,q2,q3");
  unc->add_option("--params", uo.params, "Parameter file (JSON)")->required();
  unc->add_option("--which", uo.which, "heisenberg, hardy, pitt, logup or beurling")->required();
  unc->add_option("--axis", uo.axis, "Heisenberg axis (1 or 2; both by default)")->check(CLI::Range(0, 2));
  unc->add_option("--alpha", uo.alpha, "Pitt exponent in [0, 2)");
  unc->add_option("--d", uo.d, "Beurling polynomial weight exponent");
  unc->add_option("--R", uo.R, "Beurling truncation radius");
  unc->add_option("--floor", uo.floor, "Hardy fit floor relative to the peak");
  unc->add_option("--tsv", uo.tsv, "Write plot data here");
  unc->add_option("--out", uo.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  if (*synth) return guarded([&] { return run_synth(so); });
  if (*transform) return guarded([&] { return run_transform(to); });
  if (*verify_cmd) return guarded([&] { return run_verify(vo); });
  return guarded([&] { return run_uncertainty(uo); });
}

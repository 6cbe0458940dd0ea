#include "qolct/corpus.hpp"

#include <cmath>

#include "qolct/error.hpp"

namespace qolct {

OffsetParams random_offset_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> bdist(0.5, 2.0), ad(-2.0, 2.0), off(-1.0, 1.0);
  for (;;) {
    const double b = bdist(rng), a = ad(rng), d = ad(rng);
    const double c = (a * d - 1.0) / b;
    if (std::abs(c) > 2.0) continue;
    return OffsetParams{a, b, c, d, off(rng), off(rng)};
  }
}

ParamSet random_param_set(std::mt19937_64& rng, bool ij) {
  ParamSet p;
  p.A1 = random_offset_params(rng);
  p.A2 = random_offset_params(rng);
  if (!ij) {
    std::normal_distribution<double> g;
    p.lambda = PureUnit::from_vector(g(rng), g(rng), g(rng));
    p.mu = PureUnit::from_vector(g(rng), g(rng), g(rng));
  }
  return p;
}

QField random_field(const Grid2D& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QField f(grid);
  for (Quaternion& v : f.samples()) v = {u(rng), u(rng), u(rng), u(rng)};
  return f;
}

QField chirped_gaussian(const Grid2D& grid, double alpha1, double alpha2, const GaussianAmplitude& beta,
                        const PureUnit& lambda, const PureUnit& mu, double gamma) {
  QField f = synth_gaussian(grid, alpha1, alpha2, beta, lambda, mu);
  for (std::size_t p = 0; p < grid.n1; ++p) {
    const double t1 = grid.t1(p);
    for (std::size_t q = 0; q < grid.n2; ++q) {
      const double t2 = grid.t2(q);
      f(p, q) = f(p, q) * axis_exp(mu, gamma * (t1 * t1 + t2 * t2));
    }
  }
  return f;
}

QField hardy_critical_signal(const Grid2D& grid, const ParamSet& ps, double alpha, const Quaternion& amplitude) {
  if (!(ps.A1.b > 0.0) || !(ps.A2.b > 0.0)) throw InvalidArgument("hardy_critical_signal needs b1, b2 > 0");
  QField f(grid);
  for (std::size_t p = 0; p < grid.n1; ++p) {
    const double t1 = grid.t1(p);
    const Quaternion left = axis_exp(ps.lambda, -(t1 * ps.A1.tau + 0.5 * ps.A1.a * t1 * t1) / ps.A1.b) * amplitude;
    for (std::size_t q = 0; q < grid.n2; ++q) {
      const double t2 = grid.t2(q);
      const Quaternion right = axis_exp(ps.mu, -(t2 * ps.A2.tau + 0.5 * ps.A2.a * t2 * t2) / ps.A2.b);
      f(p, q) = std::exp(-alpha * (t1 * t1 + t2 * t2)) * left * right;
    }
  }
  return f;
}

std::vector<CorpusSignal> signal_corpus(const Grid2D& grid, const PureUnit& lambda, const PureUnit& mu) {
  std::vector<CorpusSignal> out;
  out.push_back({"real-gaussian", synth_gaussian(grid, 0.5, 0.5)});
  const GaussianAmplitude beta{0.8, -0.6, 0.3, 1.1};
  out.push_back({"quaternion-gaussian", synth_gaussian(grid, 1.0, 0.5, beta, lambda, mu)});
  out.push_back({"chirped-gaussian", chirped_gaussian(grid, 0.75, 0.6, beta, lambda, mu, 0.4)});
  const Quaternion c{0.5, -0.25, 0.75, 0.4};
  out.push_back({"shifted-gaussian", sample(grid, [c](double t1, double t2) {
                   const double r1 = t1 - 0.7, r2 = t2 + 0.4;
                   return c * std::exp(-0.5 * (r1 * r1 + r2 * r2) - 0.3 * r1 * r2);
                 })});
  return out;
}

}  // namespace qolct

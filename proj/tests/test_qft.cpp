#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "qolct/error.hpp"
#include "qolct/qft.hpp"

using namespace qolct;

namespace {

constexpr double kPi = std::numbers::pi;

QField random_field(const Grid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QField f(g);
  for (Quaternion& v : f.samples()) v = {u(rng), u(rng), u(rng), u(rng)};
  return f;
}

// Sample-by-sample evaluation of the defining sum, no factorization.
QField brute_force(const QField& f, const Grid2D& out, const PureUnit& lambda, const PureUnit& mu, double sign,
                   double scale) {
  const Grid2D& in = f.grid();
  QField r(out);
  for (std::size_t a = 0; a < out.n1; ++a) {
    for (std::size_t b = 0; b < out.n2; ++b) {
      Quaternion acc;
      for (std::size_t p = 0; p < in.n1; ++p) {
        for (std::size_t q = 0; q < in.n2; ++q) {
          acc += axis_exp(lambda, sign * out.t1(a) * in.t1(p)) * f(p, q) * axis_exp(mu, sign * out.t2(b) * in.t2(q));
        }
      }
      r(a, b) = scale * acc;
    }
  }
  return r;
}

double max_relative(const QField& got, const QField& exact) { return max_abs_difference(got, exact) / max_abs(exact); }

}  // namespace

TEST(QftPlan, DefaultSpectrumGrid) {
  const Grid2D g = Grid2D::centered(64, 32, 16.0, 8.0);
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  EXPECT_NEAR(plan.output().spacing1, 2 * kPi / 16.0, 1e-15);
  EXPECT_NEAR(plan.output().spacing2, 2 * kPi / 8.0, 1e-15);
  EXPECT_EQ(plan.output().center1, 0.0);
  EXPECT_TRUE(plan.fft_compatible());
  EXPECT_TRUE(plan.axes_ij());
  EXPECT_FALSE(QftPlan::forward(g, PureUnit::j(), PureUnit::j()).axes_ij());
}

TEST(QftPlan, RejectsUnresolvedPhase) {
  const Grid2D g = Grid2D::centered(32, 8.0);
  Grid2D out = default_spectrum_grid(g);
  out.spacing1 *= 1.01;
  EXPECT_THROW(QftPlan::forward(g, out, PureUnit::i(), PureUnit::j()), PreconditionViolation);
  Grid2D wide = default_spectrum_grid(g);
  wide.n2 = 40;
  EXPECT_THROW(QftPlan::forward(g, wide, PureUnit::i(), PureUnit::j()), PreconditionViolation);
}

TEST(QftDirect, MatchesBruteForce) {
  const Grid2D g{8, 6, 0.4, -0.2, 0.5, 0.6};
  const QField f = random_field(g, 1);
  const PureUnit lambda = PureUnit::from_vector(1, 1, 0), mu = PureUnit::from_vector(0, -1, 2);
  const QftPlan plan = QftPlan::forward(g, lambda, mu);
  const QField expect = brute_force(f, plan.output(), lambda, mu, -1.0, g.cell_area());
  EXPECT_LE(max_abs_difference(qft_direct(f, plan), expect), 1e-13);
  const QftPlan inv = plan.inverted();
  const QField spec = random_field(plan.output(), 2);
  const QField expect_inv = brute_force(spec, g, lambda, mu, 1.0, plan.output().cell_area() / (4 * kPi * kPi));
  EXPECT_LE(max_abs_difference(iqft_direct(spec, inv), expect_inv), 1e-13);
}

TEST(QftDirect, ZeroAndGaussian) {
  const Grid2D g = Grid2D::centered(256, 20.0);
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  EXPECT_EQ(max_abs(qft_direct(QField(g), plan)), 0.0);

  const QField f = sample(g, [](double a, double b) { return Quaternion(std::exp(-(a * a + b * b) / 2)); });
  const QField exact = sample(plan.output(), [](double u, double v) {
    return Quaternion(2 * kPi * std::exp(-(u * u + v * v) / 2));
  });
  EXPECT_LE(max_relative(qft_direct(f, plan), exact), 1e-8);
  EXPECT_LE(max_relative(qft(f, plan), exact), 1e-8);
}

TEST(QftDirect, Dilation) {
  const Grid2D g = Grid2D::centered(128, 16.0);
  const PureUnit lambda = PureUnit::from_vector(1, 1, 0), mu = PureUnit::k();
  const Quaternion c{1.0, 0.5, -0.3, 0.2};
  auto f = [&](double a, double b) { return c * std::exp(-2 * ((a - 0.3) * (a - 0.3) + b * b)); };
  Grid2D out{32, 32, 0.0, 0.0, 0.15, 0.15};
  for (double k1 : {0.5, 2.0}) {
    for (double k2 : {0.5, 2.0}) {
      const QField dilated = sample(g, [&](double a, double b) { return f(k1 * a, k2 * b); });
      const QField lhs = qft_direct(dilated, QftPlan::forward(g, out, lambda, mu));
      Grid2D scaled = out;
      scaled.spacing1 /= k1;
      scaled.spacing2 /= k2;
      const QField base = qft_direct(sample(g, f), QftPlan::forward(g, scaled, lambda, mu));
      const QField rhs = (1.0 / (k1 * k2)) * base.relabeled(out);
      EXPECT_LE(max_abs_difference(lhs, rhs), 1e-7) << "k = " << k1 << ", " << k2;
    }
  }
}

TEST(QftFast, AgreesWithDirect) {
  for (const Grid2D& g : {Grid2D::centered(16, 4.0), Grid2D{16, 16, 0.7, -0.3, 0.3, 0.2}, Grid2D{15, 9, -1.1, 0.4, 0.3, 0.5}}) {
    const QField f = random_field(g, 17 + g.n2);
    const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
    EXPECT_LE(max_abs_difference(qft_fast_ij(f, plan), qft_direct(f, plan)), 1e-10);
    Grid2D shifted = plan.output();
    shifted.center1 = 0.9;
    shifted.center2 = -2.3;
    const QftPlan off = QftPlan::forward(g, shifted, PureUnit::i(), PureUnit::j());
    EXPECT_TRUE(off.fft_compatible());
    EXPECT_LE(max_abs_difference(qft_fast_ij(f, off), qft_direct(f, off)), 1e-10);
    const QField spec = random_field(plan.output(), 5);
    EXPECT_LE(max_abs_difference(qft_fast_ij(spec, plan.inverted()), iqft_direct(spec, plan.inverted())), 1e-10);
  }
}

TEST(QftFast, GeneralAxesAgreeWithDirect) {
  const Grid2D g{12, 10, 0.4, -0.2, 0.35, 0.4};
  const QField f = random_field(g, 41);
  const std::pair<PureUnit, PureUnit> axes[] = {
      {PureUnit::j(), PureUnit::i()},
      {PureUnit::i(), PureUnit::i()},
      {PureUnit::from_vector(-1, 0, 0), PureUnit::from_vector(0, -1, 0)},
      {PureUnit::from_vector(1, 2, -2), PureUnit::from_vector(0.3, -1, 0.5)},
      {PureUnit::k(), PureUnit::from_vector(-1, 1e-12, 0)},
  };
  for (const auto& [lambda, mu] : axes) {
    const QftPlan plan = QftPlan::forward(g, lambda, mu);
    EXPECT_LE(max_abs_difference(qft(f, plan), qft_direct(f, plan)), 1e-10);
    const QField spec = random_field(plan.output(), 8);
    EXPECT_LE(max_abs_difference(iqft(spec, plan.inverted()), iqft_direct(spec, plan.inverted())), 1e-10);
  }
}

TEST(QftFast, ZeroAndRealInput) {
  const Grid2D g = Grid2D::centered(16, 4.0);
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  EXPECT_EQ(max_abs(qft_fast_ij(QField(g), plan)), 0.0);
  const QField real = component(random_field(g, 3), 0);
  const ComponentQuartet q = qft_quartet(real, plan);
  EXPECT_GT(max_abs(q.members[0]), 0.0);
  for (int m = 1; m < 4; ++m) EXPECT_EQ(max_abs(q.members[m]), 0.0);
  EXPECT_LE(max_abs_difference(q.members[0], qft_fast_ij(real, plan)), 1e-15);
}

TEST(QftFast, AxisMismatch) {
  const Grid2D g = Grid2D::centered(16, 4.0);
  const QField f(g);
  EXPECT_THROW(qft_fast_ij(f, QftPlan::forward(g, PureUnit::j(), PureUnit::i())), InvalidArgument);
  EXPECT_THROW(qft_fast_ij(f, QftPlan::forward(g, PureUnit::i(), PureUnit::i())), InvalidArgument);
  Grid2D coarse = default_spectrum_grid(g);
  coarse.spacing1 *= 0.5;
  EXPECT_THROW(qft_fast_ij(f, QftPlan::forward(g, coarse, PureUnit::i(), PureUnit::j())), PreconditionViolation);
  EXPECT_NO_THROW(qft(f, QftPlan::forward(g, PureUnit::i(), PureUnit::i())));
}

TEST(Qft, InversionAndNorm) {
  const Grid2D g = Grid2D::centered(128, 16.0);
  const QField f = sample(g, [](double a, double b) {
    const double e = std::exp(-(a * a + 0.5 * b * b));
    return Quaternion{e, a * e, -0.5 * e, b * b * e};
  });
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  const QField back = iqft(qft(f, plan), plan.inverted());
  EXPECT_LE(max_relative(back, f), 1e-8);
  EXPECT_LE(std::abs(l2_norm(back) - l2_norm(f)) / l2_norm(f), 1e-8);
  EXPECT_EQ(max_abs(iqft(QField(plan.output()), plan.inverted())), 0.0);

  const Grid2D small = Grid2D::centered(48, 12.0);
  const QField h = sample(small, [](double a, double b) { return Quaternion{1, 0.2, 0, -0.4} * std::exp(-(a * a + b * b)); });
  const QftPlan gp = QftPlan::forward(small, PureUnit::from_vector(1, 0, 1), PureUnit::from_vector(0, 1, -1));
  EXPECT_LE(max_relative(iqft(qft(h, gp), gp.inverted()), h), 1e-8);
}

TEST(Qft, Plancherel) {
  const Grid2D g = Grid2D::centered(128, 16.0);
  const QField f = sample(g, [](double a, double b) {
    const double e = std::exp(-(a * a + b * b) / 2);
    return Quaternion{e * std::cos(a), 0.3 * e, e * std::sin(b), -e * a};
  });
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  const double ratio = quartet_l2_norm(qft_quartet(f, plan)) / l2_norm(f);
  EXPECT_LE(std::abs(ratio - 2 * kPi) / (2 * kPi), 1e-8);
}

TEST(Qft, RealLinearity) {
  const Grid2D g = Grid2D::centered(32, 8.0);
  const QField f = random_field(g, 8), h = random_field(g, 9);
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  const QField lhs = qft(1.5 * f + (-2.0) * h, plan);
  const QField rhs = 1.5 * qft(f, plan) + (-2.0) * qft(h, plan);
  EXPECT_LE(max_abs_difference(lhs, rhs), 1e-12 * max_abs(rhs));
}

TEST(Qft, QuartetRouting) {
  const Grid2D g = Grid2D::centered(32, 8.0);
  const QField real = sample(g, [](double a, double b) { return Quaternion(std::exp(-(a * a + b * b))); });
  const QField fi = left_multiply(Quaternion::unit_i(), real);
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  const ComponentQuartet q = qft_quartet(fi, plan);
  EXPECT_LE(max_abs_difference(q.members[1], qft(real, plan)), 1e-15);
  EXPECT_EQ(max_abs(q.members[0]), 0.0);
  EXPECT_EQ(max_abs(q.members[2]), 0.0);
  EXPECT_EQ(max_abs(q.members[3]), 0.0);
}

TEST(DerivativeIdentity, Orders) {
  const Grid2D g = Grid2D::centered(256, 16.0);
  const QField f = sample(g, [](double a, double b) {
    const double e = std::exp(-(a * a + b * b) / 2);
    return Quaternion{e, 0.5 * e, -0.25 * e, 0.75 * e};
  });
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  EXPECT_LE(derivative_identity_check(f, plan, 0, 0).max_error, 1e-12);
  for (auto [m, n] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 0}, std::pair{0, 2}}) {
    const IdentityReport r = derivative_identity_check(f, plan, m, n);
    EXPECT_LE(r.max_error, 1e-6) << m << "," << n;
    EXPECT_LE(r.relative_error, 1e-5) << m << "," << n;
  }
}

TEST(DerivativeIdentity, RightFactorOrderMatters) {
  const Grid2D g = Grid2D::centered(128, 16.0);
  const QField f = sample(g, [](double a, double b) { return Quaternion{1, 0.5, 0, 0} * std::exp(-(a * a + b * b) / 2); });
  const QftPlan plan = QftPlan::forward(g, PureUnit::i(), PureUnit::j());
  const IdentityReport r = derivative_identity_check(f, plan, 0, 1);
  EXPECT_LE(r.relative_error, 1e-5);
  QField wrong(plan.output());
  const QField spectrum = qft(f, plan);
  for (std::size_t a = 0; a < g.n1; ++a) {
    for (std::size_t b = 0; b < g.n2; ++b) wrong(a, b) = (Quaternion::unit_j() * plan.output().t2(b)) * spectrum(a, b);
  }
  EXPECT_GT(max_abs_difference(r.lhs, wrong) / max_abs(wrong), 0.1);
}

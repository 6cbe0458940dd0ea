#include "qolct/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "qolct/error.hpp"

namespace qolct {

namespace {

using Complex = std::complex<double>;

Complex root_factor(double alpha, const OffsetParams& A, GaussianReading reading) {
  const Complex w = reading == GaussianReading::derivation ? Complex(A.a, 2.0 * A.b * alpha)
                                                           : Complex(0.0, 2.0 * A.b * alpha + A.a);
  return std::pow(w, -0.5);
}

// Everything but the real envelope, as a number in the plane of the axis.
Complex line_factor(double alpha, const OffsetParams& A, double u, GaussianReading reading) {
  const double r = u - A.tau;
  const double chirp = (-2.0 * u * (A.d * A.tau - A.b * A.eta) + A.d * (u * u + A.tau * A.tau) -
                        A.a * r * r / (4.0 * alpha * alpha * A.b * A.b + A.a * A.a)) /
                       (2.0 * A.b);
  return root_factor(alpha, A, reading) * std::polar(1.0, chirp);
}

double envelope_exponent(double alpha, const OffsetParams& A, double u) {
  const double r = u - A.tau;
  return alpha * r * r / (4.0 * alpha * alpha * A.b * A.b + A.a * A.a);
}

void require_main(const OffsetParams& A1, const OffsetParams& A2) {
  if (!(A1.b > 0.0) || !(A2.b > 0.0)) throw InvalidArgument("closed form requires b1, b2 > 0");
}

}  // namespace

void GaussianSpec::validate() const {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw InvalidArgument("Gaussian widths alpha1, alpha2 must be > 0");
}

QField GaussianSpec::sample(const Grid2D& grid, const PureUnit& lambda, const PureUnit& mu) const {
  validate();
  return synth_gaussian(grid, alpha1, alpha2, beta, lambda, mu);
}

double gaussian_envelope(const GaussianSpec& spec, const OffsetParams& A1, const OffsetParams& A2, double u1,
                         double u2) {
  spec.validate();
  return std::exp(-(envelope_exponent(spec.alpha1, A1, u1) + envelope_exponent(spec.alpha2, A2, u2)));
}

Quaternion gaussian_qolct_closed_form(const GaussianSpec& spec, const OffsetParams& A1, const OffsetParams& A2,
                                      const PureUnit& lambda, const PureUnit& mu, double u1, double u2,
                                      GaussianReading reading) {
  spec.validate();
  require_main(A1, A2);
  const Quaternion beta1 = from_plane(lambda, Complex(spec.beta.beta11, spec.beta.beta12));
  const Quaternion beta2 = from_plane(mu, Complex(spec.beta.beta21, spec.beta.beta22));
  const Quaternion left = from_plane(lambda, line_factor(spec.alpha1, A1, u1, reading));
  const Quaternion right = from_plane(mu, line_factor(spec.alpha2, A2, u2, reading));
  return gaussian_envelope(spec, A1, A2, u1, u2) * (beta1 * left * right * beta2);
}

QField gaussian_qolct_closed_form(const GaussianSpec& spec, const OffsetParams& A1, const OffsetParams& A2,
                                  const PureUnit& lambda, const PureUnit& mu, const Grid2D& output,
                                  GaussianReading reading) {
  spec.validate();
  require_main(A1, A2);
  QField out(output);
  for (std::size_t a = 0; a < output.n1; ++a) {
    for (std::size_t b = 0; b < output.n2; ++b) {
      out(a, b) = gaussian_qolct_closed_form(spec, A1, A2, lambda, mu, output.t1(a), output.t2(b), reading);
    }
  }
  return out;
}

Quaternion gaussian_integral_complex_offset(const Quaternion& z, const Quaternion& z_offset) {
  if (!(z.w > 0.0)) throw InvalidArgument("Gaussian integral requires Sc(z) > 0");
  // The plane is fixed by whichever argument has a vector part.
  std::optional<PureUnit> axis;
  for (const Quaternion* q : {&z, &z_offset}) {
    if (vec_norm(*q) > 0.0) {
      const PureUnit u = PureUnit::from_vector(q->x, q->y, q->z);
      if (axis && norm(u.q() - axis->q()) > 1e-12 && norm(u.q() + axis->q()) > 1e-12) {
        throw InvalidArgument("z and z' must lie in one plane span{1, lambda}");
      }
      if (!axis) axis = u;
    }
  }
  const PureUnit lambda = axis.value_or(PureUnit::i());
  const Complex zc = to_plane(lambda, z);
  return from_plane(lambda, std::sqrt(std::numbers::pi / zc));
}

}  // namespace qolct

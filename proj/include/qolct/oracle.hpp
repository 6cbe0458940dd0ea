#pragma once

#include "qolct/field.hpp"
#include "qolct/qolct.hpp"

namespace qolct {

/// beta1 e^{-(alpha1 t1^2 + alpha2 t2^2)} beta2 with beta1 = beta11 + lambda beta12,
/// beta2 = beta21 + mu beta22.
struct GaussianSpec {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  GaussianAmplitude beta;

  void validate() const;
  QField sample(const Grid2D& grid, const PureUnit& lambda, const PureUnit& mu) const;
};

/// Square-root factor of the closed form. `derivation` is (a + 2 b alpha lambda)^{-1/2},
/// equal to e^{-lambda pi/4} (2 b alpha - a lambda)^{-1/2}; `printed` is
/// (2 b alpha lambda + a lambda)^{-1/2}. They agree only when a = 0.
enum class GaussianReading { derivation, printed };

/// Closed-form transform of the Gaussian at one output point. Requires b1, b2 > 0.
Quaternion gaussian_qolct_closed_form(const GaussianSpec& spec, const OffsetParams& A1, const OffsetParams& A2,
                                      const PureUnit& lambda, const PureUnit& mu, double u1, double u2,
                                      GaussianReading reading = GaussianReading::derivation);

QField gaussian_qolct_closed_form(const GaussianSpec& spec, const OffsetParams& A1, const OffsetParams& A2,
                                  const PureUnit& lambda, const PureUnit& mu, const Grid2D& output,
                                  GaussianReading reading = GaussianReading::derivation);

/// The real envelope e^{-sum alpha_k (u_k - tau_k)^2 / (4 alpha_k^2 b_k^2 + a_k^2)}.
double gaussian_envelope(const GaussianSpec& spec, const OffsetParams& A1, const OffsetParams& A2, double u1,
                         double u2);

/// Integral of e^{-z (t + z')^2} over R, i.e. sqrt(pi / z) on the principal branch,
/// for z, z' in one plane span{1, lambda} and Sc(z) > 0.
Quaternion gaussian_integral_complex_offset(const Quaternion& z, const Quaternion& z_offset);

}  // namespace qolct

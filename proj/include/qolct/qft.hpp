#pragma once

#include "qolct/field.hpp"
#include "qolct/quaternion.hpp"

namespace qolct {

enum class Direction { forward, inverse };

/// Two-sided QFT F(u) = sum_t e^{-lambda u1 t1} f(t) e^{-mu u2 t2} dt, and its
/// inverse with +exponents and 1/(4 pi^2). Angular frequencies, no 2 pi in the
/// exponent.
class QftPlan {
 public:
  /// Spectrum grid defaults to spacing 2 pi / (n h) centered at 0.
  static QftPlan forward(const Grid2D& signal_grid, const PureUnit& lambda, const PureUnit& mu);
  static QftPlan forward(const Grid2D& signal_grid, const Grid2D& spectrum_grid, const PureUnit& lambda,
                         const PureUnit& mu);
  static QftPlan inverse(const Grid2D& spectrum_grid, const Grid2D& signal_grid, const PureUnit& lambda,
                         const PureUnit& mu);
  /// The inverse plan mapping this plan's output back onto its input grid.
  QftPlan inverted() const;

  const Grid2D& input() const { return input_; }
  const Grid2D& output() const { return output_; }
  const PureUnit& lambda() const { return lambda_; }
  const PureUnit& mu() const { return mu_; }
  Direction direction() const { return direction_; }

  /// Same shape on both sides and spacing_in * spacing_out * n = 2 pi per axis.
  bool fft_compatible() const;
  bool axes_ij() const;

 private:
  QftPlan(const Grid2D& in, const Grid2D& out, const PureUnit& lambda, const PureUnit& mu, Direction dir);

  Grid2D input_;
  Grid2D output_;
  PureUnit lambda_;
  PureUnit mu_;
  Direction direction_;
};

Grid2D default_spectrum_grid(const Grid2D& signal_grid);

/// Kernel quadrature for arbitrary axes, evaluated one axis at a time.
QField qft_direct(const QField& f, const QftPlan& plan);
QField iqft_direct(const QField& spectrum, const QftPlan& plan);

/// FFT path for lambda = i, mu = j on FFT-compatible grids; either direction.
QField qft_fast_ij(const QField& f, const QftPlan& plan);

/// FFT path (any axes) on FFT-compatible grids, otherwise direct quadrature.
QField qft(const QField& f, const QftPlan& plan);
QField iqft(const QField& spectrum, const QftPlan& plan);

ComponentQuartet qft_quartet(const QField& f, const QftPlan& plan);

/// Result of comparing two independently computed sides of an identity.
struct IdentityReport {
  QField lhs;
  QField rhs;
  double max_error = 0.0;     // max pointwise |lhs - rhs|_Q
  double reference = 0.0;     // max pointwise |rhs|_Q
  double relative_error = 0.0;
};

/// F{d^{m+n} f / dt1^m dt2^n}(u) against (lambda u1)^m F{f}(u) (mu u2)^n, m + n <= 2.
IdentityReport derivative_identity_check(const QField& f, const QftPlan& plan, int m, int n, int fd_order = 6);

}  // namespace qolct

#pragma once

#include "qolct/field.hpp"
#include "qolct/qolct.hpp"

namespace qolct {

/// Gamma function (x > 0).
double gamma_fn(double x);
/// Gamma'(x) / Gamma(x) (x > 0).
double digamma(double x);

struct PittConstants {
  double alpha = 0.0;
  double C = 0.0;  // (4 pi^2 / 2^alpha) [Gamma((2 - alpha)/4) / Gamma((2 + alpha)/4)]^2
  double D = 0.0;  // C / 4 pi^2
};

/// Throws InvalidArgument unless 0 <= alpha < 2.
PittConstants pitt_constants(double alpha);

/// ln 2 + psi(1/2) = -gamma_E - ln 2.
double log_up_constant();

struct HeisenbergReport {
  GridAxis axis = GridAxis::first;
  double spatial_spread = 0.0;   // integral of t_k^2 |f|_Q^2
  double spectral_spread = 0.0;  // integral of (xi_k / 2 pi b_k)^2 times the squared quartet norm
  double spectral_spread_modulus = 0.0;  // same with |O{f}|_Q^2
  double base_bound = 0.0;       // |f|_{2,Q}^4 / 16 pi^2
  double cov = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;  // base_bound + cov^2
  double gap = 0.0;
  double lhs_modulus = 0.0;
  double gap_modulus = 0.0;
};

/// Requires b1, b2 > 0. The phase field is h / |h|_Q with h the chirped signal,
/// zeroed where |h|_Q <= 1e-12 max |h|_Q.
HeisenbergReport heisenberg_report(const QField& f, const QolctPlan& plan, GridAxis axis, int fd_order = 6);

struct EnvelopeFit {
  double alpha = 0.0;     // decay rate in C e^{-alpha |t|^2}
  double C = 0.0;
  double residual = 0.0;  // rms of the log-domain residual
  std::size_t samples = 0;
};

/// Least squares of log|g|_Q against log C - alpha |t|^2 over samples above
/// floor * max|g|_Q. Throws PreconditionViolation with fewer than 3 such samples.
EnvelopeFit hardy_envelope_fit(const QField& g, double floor = 1e-8);

struct HardyReport {
  EnvelopeFit signal;    // |f(t)|_Q
  EnvelopeFit spectrum;  // |O{f}(b1 u1, b2 u2)|_Q against u
  double product = 0.0;  // alpha_hat * beta_hat
  Quaternion amplitude;
  double reconstruction_error = 0.0;
};

/// Fits both envelopes and compares f with
/// conj(E1(t1)) A e^{-alpha_hat |t|^2} conj(E2(t2)), where E_k is the input chirp of
/// the plan and A the least-squares quaternion amplitude.
HardyReport hardy_check(const QField& f, const QolctPlan& plan, double floor = 1e-8);

/// The transform field relabeled onto u = (z1 / b1, z2 / b2).
QField rescaled_spectrum(const QField& spectrum, const QolctPlan& plan);

/// Truncated integral of |f(t)|_Q ||O{f}(b1 u1, b2 u2)||_Q e^{|t||u|} / (1 + |t| + |u|)^d
/// over |t|, |u| <= R, evaluated on radial bins.
double beurling_integral(const QField& f, const ComponentQuartet& quartet, const QolctPlan& plan, double d,
                         double R);

struct BeurlingReport {
  double d = 0.0;
  double R = 0.0;
  double value = 0.0;
  double value_half = 0.0;  // truncation at R / 2
  double growth = 0.0;      // value / value_half
};

BeurlingReport beurling_report(const QField& f, const QolctPlan& plan, double d, double R);

struct PittReport {
  PittConstants constants;
  double lhs = 0.0;  // integral of |(z1/b1, z2/b2)|^{-alpha} ||O{f}(z)||_Q^2
  double rhs = 0.0;  // D_alpha times integral of |t|^alpha |f|_Q^2
  double slack = 0.0;
};

/// Requires lambda = i, mu = j and b1, b2 > 0.
PittReport pitt_check(const QField& f, const QolctPlan& plan, double alpha);

struct LogUpReport {
  double constant = 0.0;       // A
  double spectral_term = 0.0;  // integral of ln|(z1/b1, z2/b2)| ||O{f}(z)||_Q^2
  double spatial_term = 0.0;   // integral of ln|t| |f|_Q^2
  double energy = 0.0;         // integral of |f|_Q^2
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

LogUpReport log_up_check(const QField& f, const QolctPlan& plan);

}  // namespace qolct

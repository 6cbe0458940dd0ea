#pragma once

#include <optional>

#include "qolct/field.hpp"
#include "qolct/qft.hpp"
#include "qolct/quaternion.hpp"

namespace qolct {

/// Unimodular matrix (a b; c d) with offsets (tau, eta).
struct OffsetParams {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
  double tau = 0.0;
  double eta = 0.0;

  /// Throws InvalidArgument unless |ad - bc - 1| <= tol and all entries are finite.
  static OffsetParams make(double a, double b, double c, double d, double tau = 0.0, double eta = 0.0,
                           double tol = 1e-12);
  /// (0, 1, -1, 0 | 0, 0): the two-sided QFT up to constants.
  static OffsetParams qft_case();
  static OffsetParams identity() { return {}; }

  double determinant() const { return a * d - b * c; }
  void validate(double tol = 1e-12) const;
};

/// (1/sqrt(lambda 2 pi b)) e^{lambda (a t^2 - 2t(u - tau) - 2u(d tau - b eta) + d(u^2 + tau^2)) / (2b)}.
Quaternion kernel(const OffsetParams& A, const PureUnit& lambda, double t, double u);

/// Output grid u_k = b_k * (default QFT frequencies). Requires b1, b2 > 0.
Grid2D default_qolct_output_grid(const Grid2D& input, const OffsetParams& A1, const OffsetParams& A2);

class QolctPlan {
 public:
  QolctPlan(const OffsetParams& A1, const OffsetParams& A2, const PureUnit& lambda, const PureUnit& mu,
            const Grid2D& input);
  /// Explicit output grid; the only form usable when some b_k = 0.
  QolctPlan(const OffsetParams& A1, const OffsetParams& A2, const PureUnit& lambda, const PureUnit& mu,
            const Grid2D& input, const Grid2D& output);

  const OffsetParams& A1() const { return A1_; }
  const OffsetParams& A2() const { return A2_; }
  const PureUnit& lambda() const { return lambda_; }
  const PureUnit& mu() const { return mu_; }
  const Grid2D& input() const { return input_; }
  const Grid2D& output() const { return output_; }
  const OffsetParams& params(GridAxis axis) const { return axis == GridAxis::first ? A1_ : A2_; }

  bool main_branch() const { return qft_.has_value(); }
  /// QFT from the input grid onto the frequencies u_k / b_k. Throws unless b1, b2 > 0.
  const QftPlan& qft_plan() const;

  QolctPlan with_input(const Grid2D& input) const;
  QolctPlan with_output(const Grid2D& output) const;

 private:
  OffsetParams A1_, A2_;
  PureUnit lambda_, mu_;
  Grid2D input_, output_;
  std::optional<QftPlan> qft_;
};

/// Chirp, QFT at u/b, chirp.
QField qolct_forward(const QField& f, const QolctPlan& plan);
/// Kernel quadrature, one axis at a time.
QField qolct_direct(const QField& f, const QolctPlan& plan);
/// Maps a field on plan.output() back onto plan.input().
QField qolct_inverse(const QField& spectrum, const QolctPlan& plan);
/// Quadrature of conj(K1) O conj(K2) over u.
QField qolct_inverse_direct(const QField& spectrum, const QolctPlan& plan);

ComponentQuartet qolct_quartet(const QField& f, const QolctPlan& plan);

enum class DegenerateBranch { b1_zero, b2_zero, both_zero };

/// Phase on a collapsed axis: c d (u - tau)^2 / 2 plus u eta (the b -> 0 limit of
/// the main branch) or u tau (as usually printed).
enum class DegeneratePhase { limit, printed };

/// The b_k = 0 branches: f sampled at d_k (u_k - tau_k) by bicubic interpolation on
/// collapsed axes, kernel quadrature on the others.
QField qolct_degenerate(const QField& f, const QolctPlan& plan, DegenerateBranch which,
                        DegeneratePhase phase = DegeneratePhase::limit);

/// Phase constant used by the shift and modulation checks.
enum class CovariancePhase { derived, printed };

/// O{f(t - k)}(u) against the phase-factored O{f}(u1 - a1 k1, u2 - a2 k2).
/// The shifted signal is f itself on a translated grid, so no resampling occurs.
IdentityReport shift_covariance_check(const QField& f, const QolctPlan& plan, double k1, double k2,
                                      CovariancePhase phase = CovariancePhase::derived);

/// O{e^{lambda t1 xi1} f e^{mu t2 xi2}}(u) against the phase-factored O{f}(u - b xi).
IdentityReport modulation_covariance_check(const QField& f, const QolctPlan& plan, double xi1, double xi2,
                                           CovariancePhase phase = CovariancePhase::derived);

struct MomentReport {
  GridAxis axis = GridAxis::first;
  double lhs = 0.0;          // integral of u_k^2 times the squared quartet norm of O{f}
  double lhs_modulus = 0.0;  // same with |O{f}|_Q^2
  double rhs = 0.0;          // b_k^2 integral of |lambda (a t + tau)/b f + df/dt|^2 (mu on the right for axis 2)
  double relative_error = 0.0;
  double relative_error_modulus = 0.0;
};

MomentReport moment_identity_check(const QField& f, const QolctPlan& plan, GridAxis axis, int fd_order = 6);

/// E1(t1) f E2(t2) with E_k = e^{lambda_k (t_k tau_k / b_k + a_k t_k^2 / (2 b_k))}.
QField chirp_premultiply(const QField& f, const QolctPlan& plan);

}  // namespace qolct

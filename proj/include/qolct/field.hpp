#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qolct/quaternion.hpp"

namespace qolct {

enum class GridAxis { first = 1, second = 2 };

/// Cell-centered rectangular sampling of R^2.
///
/// Sample p along axis 1 sits at center1 + (p - (n1 - 1)/2) * spacing1, so an
/// even sample count never places a sample on the center itself.
struct Grid2D {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double center1 = 0.0;
  double center2 = 0.0;
  double spacing1 = 1.0;
  double spacing2 = 1.0;

  /// n x n grid covering [-extent/2, extent/2]^2.
  static Grid2D centered(std::size_t n, double extent);
  static Grid2D centered(std::size_t n1, std::size_t n2, double extent1, double extent2);

  /// Throws InvalidArgument unless counts are positive and spacings finite and > 0.
  void validate() const;

  double t1(std::size_t p) const { return center1 + (static_cast<double>(p) - 0.5 * static_cast<double>(n1 - 1)) * spacing1; }
  double t2(std::size_t q) const { return center2 + (static_cast<double>(q) - 0.5 * static_cast<double>(n2 - 1)) * spacing2; }
  double coord(GridAxis axis, std::size_t idx) const { return axis == GridAxis::first ? t1(idx) : t2(idx); }

  std::size_t count(GridAxis axis) const { return axis == GridAxis::first ? n1 : n2; }
  double spacing(GridAxis axis) const { return axis == GridAxis::first ? spacing1 : spacing2; }
  double center(GridAxis axis) const { return axis == GridAxis::first ? center1 : center2; }
  double extent(GridAxis axis) const { return static_cast<double>(count(axis)) * spacing(axis); }
  /// Largest |coordinate| of any sample along the axis.
  double max_abs(GridAxis axis) const;

  std::size_t size() const { return n1 * n2; }
  double cell_area() const { return spacing1 * spacing2; }
  std::size_t index(std::size_t p, std::size_t q) const { return p * n2 + q; }

  bool operator==(const Grid2D&) const = default;
};

/// Quaternion samples on a Grid2D, row-major with axis 1 outer.
class QField {
 public:
  QField() = default;
  explicit QField(const Grid2D& grid);
  QField(const Grid2D& grid, std::vector<Quaternion> samples);

  const Grid2D& grid() const { return grid_; }
  std::span<const Quaternion> samples() const { return samples_; }
  std::span<Quaternion> samples() { return samples_; }
  std::size_t size() const { return samples_.size(); }

  const Quaternion& operator()(std::size_t p, std::size_t q) const { return samples_[grid_.index(p, q)]; }
  Quaternion& operator()(std::size_t p, std::size_t q) { return samples_[grid_.index(p, q)]; }
  const Quaternion& operator[](std::size_t idx) const { return samples_[idx]; }
  Quaternion& operator[](std::size_t idx) { return samples_[idx]; }

  /// Same samples, relabeled onto another grid of identical shape.
  QField relabeled(const Grid2D& grid) const;

 private:
  Grid2D grid_;
  std::vector<Quaternion> samples_;
};

/// The four fields F{f_0}, ..., F{f_3}: one transform per real component.
struct ComponentQuartet {
  std::array<QField, 4> members;

  const Grid2D& grid() const { return members[0].grid(); }
};

using Signal = std::function<Quaternion(double t1, double t2)>;

QField sample(const Grid2D& grid, const Signal& signal);

/// Real component m (0..3) of f as a real-valued field.
QField component(const QField& f, int m);

QField operator+(const QField& a, const QField& b);
QField operator-(const QField& a, const QField& b);
QField operator*(double s, const QField& f);
/// Left and right constant multiplication c f and f c.
QField left_multiply(const Quaternion& c, const QField& f);
QField right_multiply(const QField& f, const Quaternion& c);

/// Deterministic pairwise (tree) summation.
double pairwise_sum(std::span<const double> values);
Quaternion pairwise_sum(std::span<const Quaternion> values);

/// Riemann sum over the grid: sum of samples times spacing1 * spacing2.
Quaternion integrate(const QField& g);
/// Riemann sum of a real integrand given per sample.
double integrate_real(const Grid2D& grid, std::span<const double> values);

/// sqrt of the integral of |f|_Q^2.
double l2_norm(const QField& f);

double quartet_norm_pointwise(const ComponentQuartet& quartet, std::size_t index);
double quartet_l2_norm(const ComponentQuartet& quartet);

/// Sum_m e_m * members[m] with e = (1, i, j, k). Differs from the transform of f
/// whenever the kernels fail to commute with the component units.
QField recombine(const ComponentQuartet& quartet);

/// beta e^{-(alpha1 t1^2 + alpha2 t2^2)} with beta = (beta11 + lambda beta12)(beta21 + mu beta22).
struct GaussianAmplitude {
  double beta11 = 1.0;
  double beta12 = 0.0;
  double beta21 = 1.0;
  double beta22 = 0.0;
};
QField synth_gaussian(const Grid2D& grid, double alpha1, double alpha2, const GaussianAmplitude& beta,
                      const PureUnit& lambda, const PureUnit& mu);
QField synth_gaussian(const Grid2D& grid, double alpha1, double alpha2);

/// Central finite differences of the given even order (4 or 6) in the interior
/// and one-sided stencils of the same order at the edges.
QField partial_derivative(const QField& f, GridAxis axis, int order = 6);

/// Tensor-product cubic Lagrange interpolation. Throws PreconditionViolation
/// when (t1, t2) lies outside the sampled rectangle.
Quaternion interpolate_bicubic(const QField& f, double t1, double t2);

double max_abs_difference(const QField& a, const QField& b);
double max_abs(const QField& f);
/// |a - b|_{2,Q} / |b|_{2,Q}.
double relative_l2_distance(const QField& a, const QField& b);

/// Sub-grid of samples [p0, p0 + m1) x [q0, q0 + m2).
QField crop(const QField& f, std::size_t p0, std::size_t m1, std::size_t q0, std::size_t m2);

/// Finite-difference weights for the first derivative at `at` given sample
/// offsets (in units of the spacing). Fornberg's recursion.
std::vector<double> first_derivative_weights(std::span<const double> offsets, double at);

}  // namespace qolct

#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace qolct {

/// Real quaternion w + x i + y j + z k with the Hamilton product.
struct Quaternion {
  double w = 0.0;  // scalar part
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(double real) : w(real) {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double scalar() const { return w; }
  constexpr Quaternion vec() const { return {0.0, x, y, z}; }
  constexpr double operator[](int m) const { return m == 0 ? w : m == 1 ? x : m == 2 ? y : z; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product; ij = k, jk = i, ki = j.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double norm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }
inline double vec_norm(const Quaternion& q) { return std::hypot(q.x, q.y, q.z); }

/// Multiplicative inverse conj(q)/|q|^2. Undefined (inf/nan) for q = 0.
constexpr Quaternion inverse(const Quaternion& q) { return conj(q) / norm2(q); }

/// |a - b|_Q.
inline double distance(const Quaternion& a, const Quaternion& b) { return norm(a - b); }

/// Pure unit quaternion: zero scalar part, unit norm, squares to -1.
class PureUnit {
 public:
  /// Normalizes (x, y, z). Throws InvalidArgument for the zero vector.
  static PureUnit from_vector(double x, double y, double z);
  static PureUnit i() { return PureUnit(Quaternion::unit_i()); }
  static PureUnit j() { return PureUnit(Quaternion::unit_j()); }
  static PureUnit k() { return PureUnit(Quaternion::unit_k()); }

  const Quaternion& q() const { return axis_; }
  operator const Quaternion&() const { return axis_; }  // NOLINT(google-explicit-constructor)

  bool operator==(const PureUnit& o) const { return axis_ == o.axis_; }

 private:
  explicit PureUnit(Quaternion axis) : axis_(axis) {}
  Quaternion axis_;
};

struct Polar {
  double magnitude = 0.0;
  PureUnit axis = PureUnit::i();
  double angle = 0.0;  // in [0, pi]
};

/// q = magnitude (cos angle + axis sin angle). When |Vec(q)| <= 1e-300 the axis
/// is undefined; `fallback` is used if given, otherwise InvalidArgument.
Polar polar(const Quaternion& q);
Polar polar(const Quaternion& q, const PureUnit& fallback);
Quaternion from_polar(const Polar& p);

/// cos(theta) + axis sin(theta).
inline Quaternion axis_exp(const PureUnit& axis, double theta) {
  const double s = std::sin(theta);
  const Quaternion& a = axis.q();
  return {std::cos(theta), a.x * s, a.y * s, a.z * s};
}

/// 1/sqrt(axis) under the convention e^{-axis pi/4}.
inline Quaternion inv_sqrt_unit(const PureUnit& axis) {
  constexpr double h = 0.70710678118654752440;
  const Quaternion& a = axis.q();
  return {h, -h * a.x, -h * a.y, -h * a.z};
}

// The plane span{1, axis} is a copy of C; these map between the two.
inline Quaternion from_plane(const PureUnit& axis, std::complex<double> c) {
  const Quaternion& a = axis.q();
  return {c.real(), a.x * c.imag(), a.y * c.imag(), a.z * c.imag()};
}
/// Orthogonal projection onto span{1, axis}, read back as a complex number.
inline std::complex<double> to_plane(const PureUnit& axis, const Quaternion& q) {
  const Quaternion& a = axis.q();
  return {q.w, q.x * a.x + q.y * a.y + q.z * a.z};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qolct

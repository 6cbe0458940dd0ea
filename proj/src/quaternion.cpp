#include "qolct/quaternion.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>

#include "qolct/error.hpp"

namespace qolct {

PureUnit PureUnit::from_vector(double x, double y, double z) {
  const double n = std::hypot(x, y, z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("pure unit axis must be a nonzero finite vector");
  }
  return PureUnit(Quaternion{0.0, x / n, y / n, z / n});
}

namespace {

constexpr double kDegenerateVec = 1e-300;

Polar polar_impl(const Quaternion& q, const PureUnit* fallback) {
  const double v = vec_norm(q);
  Polar p;
  p.magnitude = norm(q);
  p.angle = std::clamp(std::atan2(v, q.w), 0.0, std::numbers::pi);
  if (v <= kDegenerateVec) {
    if (fallback == nullptr) {
      throw InvalidArgument("polar: vector part vanishes, axis undefined");
    }
    p.axis = *fallback;
  } else {
    p.axis = PureUnit::from_vector(q.x, q.y, q.z);
  }
  return p;
}

}  // namespace

Polar polar(const Quaternion& q) { return polar_impl(q, nullptr); }
Polar polar(const Quaternion& q, const PureUnit& fallback) { return polar_impl(q, &fallback); }

Quaternion from_polar(const Polar& p) { return p.magnitude * axis_exp(p.axis, p.angle); }

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << ", " << q.x << "i, " << q.y << "j, " << q.z << "k)";
}

}  // namespace qolct

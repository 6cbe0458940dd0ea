#pragma once

#include <span>

#include "qolct/field.hpp"

namespace qolct::detail {

/// out(a, b) = scale * sum_p sum_q left[a n1 + p] f(p, q) right[b n2 + q]
/// with n1, n2 the input shape and the output shape taken from `out_grid`.
/// Evaluated one axis at a time; both sums are pairwise.
QField separable_apply(const QField& f, const Grid2D& out_grid, std::span<const Quaternion> left,
                       std::span<const Quaternion> right, double scale);

}  // namespace qolct::detail

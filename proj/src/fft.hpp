#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qolct::detail {

/// In-place y_b = sum_p x_p exp(-i w_b t_p) on `howmany` contiguous rows of
/// length n, where t_p and w_b are cell-centered coordinates
///   t_p = t_center + (p - (n-1)/2) t_step,  w_b = w_center + (b - (n-1)/2) w_step
/// and w_step * t_step = 2 pi / n (checked by the caller).
void shifted_dft(std::span<std::complex<double>> rows, std::size_t n, double t_center, double t_step,
                 double w_center, double w_step);

}  // namespace qolct::detail

#include "fft.hpp"

#include <fftw3.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

namespace qolct::detail {

namespace {

// FFTW planning is not thread-safe; execution on a finished plan is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, std::size_t howmany) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, howmany);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    fftw_complex* scratch = fftw_alloc_complex(n * howmany);
    const int len = static_cast<int>(n);
    fftw_plan plan = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), scratch, nullptr, 1, len, scratch,
                                        nullptr, 1, len, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::size_t>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// exp(i * pi * num / den) with num reduced modulo 2 den in exact integer arithmetic.
std::complex<double> unit_phase(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t r = num % (2 * den);
  return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

}  // namespace

void shifted_dft(std::span<std::complex<double>> rows, std::size_t n, double t_center, double t_step,
                 double w_center, double w_step) {
  if (n == 0) return;
  const std::size_t howmany = rows.size() / n;
  const double m = 0.5 * static_cast<double>(n - 1);
  const std::uint64_t un = n;
  const std::uint64_t two_m = un - 1;  // 2m, an integer

  // Pre-twiddle: exp(-i w_c t_p) exp(i 2 pi m p / n).
  std::vector<std::complex<double>> pre(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double t = t_center + (static_cast<double>(p) - m) * t_step;
    pre[p] = std::polar(1.0, -w_center * t) * unit_phase(two_m * p, un);
  }
  // Post-twiddle: exp(-i (b - m) w_step t_c) exp(i 2 pi b m / n) exp(-i 2 pi m^2 / n).
  // 2 pi m^2 / n = pi (n-1)^2 / (2n).
  const std::complex<double> constant = std::conj(unit_phase(two_m * two_m, 2 * un));
  std::vector<std::complex<double>> post(n);
  for (std::size_t b = 0; b < n; ++b) {
    const double shift = (static_cast<double>(b) - m) * w_step * t_center;
    post[b] = std::polar(1.0, -shift) * unit_phase(two_m * b, un) * constant;
  }

  for (std::size_t r = 0; r < howmany; ++r) {
    std::complex<double>* row = rows.data() + r * n;
    for (std::size_t p = 0; p < n; ++p) row[p] *= pre[p];
  }
  auto* data = reinterpret_cast<fftw_complex*>(rows.data());
  fftw_execute_dft(cache().get(n, howmany), data, data);
  for (std::size_t r = 0; r < howmany; ++r) {
    std::complex<double>* row = rows.data() + r * n;
    for (std::size_t b = 0; b < n; ++b) row[b] *= post[b];
  }
}

}  // namespace qolct::detail

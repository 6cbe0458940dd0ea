#include "separable.hpp"

#include <vector>

#include "parallel.hpp"
#include "qolct/error.hpp"

namespace qolct::detail {

QField separable_apply(const QField& f, const Grid2D& out_grid, std::span<const Quaternion> left,
                       std::span<const Quaternion> right, double scale) {
  const Grid2D& in = f.grid();
  const std::size_t n1 = in.n1, n2 = in.n2, m1 = out_grid.n1, m2 = out_grid.n2;
  if (left.size() != m1 * n1 || right.size() != m2 * n2) throw InvalidArgument("kernel table shape mismatch");

  // mid(p, b) = sum_q f(p, q) right(b, q)
  std::vector<Quaternion> mid(n1 * m2);
  parallel_for(n1, [&](std::size_t begin, std::size_t end) {
    std::vector<Quaternion> terms(n2);
    for (std::size_t p = begin; p < end; ++p) {
      for (std::size_t b = 0; b < m2; ++b) {
        const Quaternion* r = right.data() + b * n2;
        for (std::size_t q = 0; q < n2; ++q) terms[q] = f(p, q) * r[q];
        mid[p * m2 + b] = pairwise_sum(terms);
      }
    }
  });

  QField out(out_grid);
  parallel_for(m1, [&](std::size_t begin, std::size_t end) {
    std::vector<Quaternion> terms(n1);
    for (std::size_t a = begin; a < end; ++a) {
      const Quaternion* l = left.data() + a * n1;
      for (std::size_t b = 0; b < m2; ++b) {
        for (std::size_t p = 0; p < n1; ++p) terms[p] = l[p] * mid[p * m2 + b];
        out(a, b) = scale * pairwise_sum(terms);
      }
    }
  });
  return out;
}

}  // namespace qolct::detail

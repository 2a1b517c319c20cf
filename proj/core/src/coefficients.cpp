#include "dicelab/coefficients.hpp"

#include <string>

namespace dicelab {

CoefficientSequence coefficient_sequence(const FrequencyVector& fb) {
  const int n = fb.n;
  CoefficientSequence c{n, std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
  std::int64_t prefix = 0;  // sum_{k<j} btilde_k
  for (int j = 1; j <= n; ++j) {
    const std::int64_t bj = fb.counts[static_cast<std::size_t>(j - 1)];
    c.doubled_c[static_cast<std::size_t>(j - 1)] = 2 * prefix + bj - (2 * j - 1);
    prefix += bj;
  }
  return c;
}

std::int64_t doubled_margin_via_coefficients(const FrequencyVector& fa,
                                             const CoefficientSequence& cb) {
  if (fa.n != cb.n)
    fail(Err::DimensionMismatch,
         "coefficients n=" + std::to_string(cb.n) + " vs frequency n=" + std::to_string(fa.n));
  std::int64_t dm = 0;
  for (std::size_t j = 0; j < fa.counts.size(); ++j) dm += cb.doubled_c[j] * fa.counts[j];
  return dm;
}

}  // namespace dicelab

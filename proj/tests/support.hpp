#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

namespace testsupport {

// Survival p-value of a Pearson chi-square statistic with df degrees.
inline double chi_square_p(double stat, int df) {
  if (stat <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * stat);
}

// Pearson statistic for observed counts against expected probabilities.
// Cells with expectation below min_expect are pooled into the last cell.
inline double pearson_stat(const std::vector<std::uint64_t>& observed,
                           const std::vector<double>& probs, std::uint64_t total,
                           int& df_out, double min_expect = 5.0) {
  double stat = 0.0;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = probs[i] * double(total);
    if (e < min_expect) {
      pooled_obs += double(observed[i]);
      pooled_exp += e;
      continue;
    }
    const double d = double(observed[i]) - e;
    stat += d * d / e;
    ++cells;
  }
  if (pooled_exp > 0.0) {
    const double d = pooled_obs - pooled_exp;
    stat += d * d / pooled_exp;
    ++cells;
  }
  df_out = cells - 1;
  return stat;
}

inline double binomial_se(double p, std::uint64_t n) {
  return std::sqrt(p * (1.0 - p) / double(n));
}

}  // namespace testsupport

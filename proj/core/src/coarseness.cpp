#include "dicelab/coarseness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicelab {

CoarsenessReport check_coarse(const CoefficientSequence& c) {
  const int n = c.n;
  if (n < 3) fail(Err::DomainError, "check_coarse needs n >= 3, got " + std::to_string(n));
  const auto& dc = c.doubled_c;  // doubled half-integers
  const double ln = std::log(static_cast<double>(n));
  const double need = static_cast<double>(n) / ln;  // index-count threshold for S5/S6

  CoarsenessReport r;
  r.n = n;

  // S1: |c_j| <= sqrt(n) log n, i.e. |2c_j| <= 2 sqrt(n) log n.
  r.s1 = true;
  {
    const double bound2 = 2.0 * std::sqrt(static_cast<double>(n)) * ln;
    for (int j = 1; j <= n; ++j) {
      if (std::abs(static_cast<double>(dc[static_cast<std::size_t>(j - 1)])) > bound2) {
        r.s1 = false;
        r.s1_index = j;
        break;
      }
    }
  }

  // S2: exact integer zero sum.
  {
    std::int64_t sum2 = 0;
    for (std::int64_t v : dc) sum2 += v;
    r.s2_doubled_sum = sum2;
    r.s2 = (sum2 == 0);
  }

  // S3: |c_j - c_k| <= sqrt(|j-k|) (log n)^2.  Gaps d with
  // sqrt(d)(log n)^2 >= max-min spread hold automatically, so only
  // d <= (spread/(log n)^2)^2 needs scanning.
  r.s3 = true;
  {
    const auto [mn_it, mx_it] = std::minmax_element(dc.begin(), dc.end());
    const double spread = static_cast<double>(*mx_it - *mn_it) / 2.0;
    const double ln2 = ln * ln;
    int d_cap = n - 1;
    if (spread >= 0) {
      const double cap = (spread / ln2) * (spread / ln2);
      if (cap < static_cast<double>(n - 1)) d_cap = static_cast<int>(cap);  // floor
    }
    for (int d = 1; d <= d_cap && r.s3; ++d) {
      const double bound2 = 2.0 * std::sqrt(static_cast<double>(d)) * ln2;
      for (int j = 0; j + d < n; ++j) {
        const double diff2 = std::abs(
            static_cast<double>(dc[static_cast<std::size_t>(j + d)] - dc[static_cast<std::size_t>(j)]));
        if (diff2 > bound2) {
          r.s3 = false;
          r.s3_j = j + 1;
          r.s3_k = j + d + 1;
          break;
        }
      }
    }
  }

  // S4: exact least squares of c_j against a*j + b.
  {
    long double sc = 0, sxc = 0, scc = 0;
    const long double mean_x = (n + 1) / 2.0L;
    for (int j = 1; j <= n; ++j) {
      const long double cj = static_cast<long double>(dc[static_cast<std::size_t>(j - 1)]) / 2.0L;
      sc += cj;
      sxc += (j - mean_x) * cj;
      scc += cj * cj;
    }
    const long double mean_c = sc / n;
    const long double sxx = static_cast<long double>(n) *
                            (static_cast<long double>(n) * n - 1.0L) / 12.0L;
    const long double ssc = scc - static_cast<long double>(n) * mean_c * mean_c;
    const long double a = sxc / sxx;
    const long double resid = ssc - sxc * sxc / sxx;
    r.s4_min = static_cast<double>(resid);
    r.s4_a = static_cast<double>(a);
    r.s4_b = static_cast<double>(mean_c - a * mean_x);
    const double thresh = static_cast<double>(n) * n / (ln * ln);
    r.s4 = (r.s4_min >= thresh);
  }

  // S5: count j with c_j = c_{j+1} = c_{j+2} - 1/2 (doubled: +1), exact.
  {
    std::int64_t count = 0;
    for (int j = 0; j + 2 < n; ++j) {
      const auto j0 = static_cast<std::size_t>(j);
      if (dc[j0] == dc[j0 + 1] && dc[j0 + 2] == dc[j0] + 1) ++count;
    }
    r.s5_count = count;
    r.s5 = (static_cast<double>(count) >= need);
  }

  // S6: for each integer y in [n^{1/4}, n/(log n)^2], count indices with a
  // large second difference at gap y.
  r.s6 = true;
  {
    const int y_lo = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 0.25)));
    const int y_hi = static_cast<int>(std::floor(static_cast<double>(n) / (ln * ln)));
    for (int y = y_lo; y <= y_hi; ++y) {
      const double bound2 = 2.0 * std::sqrt(static_cast<double>(y));
      std::int64_t count = 0;
      for (int j = 0; j + 2 * y < n; ++j) {
        const auto j0 = static_cast<std::size_t>(j);
        const auto d2 = static_cast<double>(dc[j0] - 2 * dc[j0 + static_cast<std::size_t>(y)] +
                                            dc[j0 + 2 * static_cast<std::size_t>(y)]);
        if (std::abs(d2) >= bound2) ++count;
      }
      if (static_cast<double>(count) < need) {
        r.s6 = false;
        r.s6_y = y;
        r.s6_count_at_y = count;
        break;
      }
    }
  }

  r.well_bounded = r.s1 && r.s2 && r.s3;
  r.coarse = r.well_bounded && r.s4 && r.s5 && r.s6;
  return r;
}

}  // namespace dicelab

#pragma once

#include <cstdint>

#include "dicelab/coefficients.hpp"

namespace dicelab {

// Literal evaluation of the well-bounded/coarse conditions S1-S6 with
// natural logs:
//   S1  |c_j| <= sqrt(n) log n
//   S2  sum_j c_j = 0
//   S3  |c_j - c_k| <= sqrt(|j-k|) (log n)^2
//   S4  min_{a,b} sum_j (c_j - aj - b)^2 >= n^2/(log n)^2
//   S5  at least n/log n indices j with c_j = c_{j+1} = c_{j+2} - 1/2
//   S6  for every integer y in [n^{1/4}, n/(log n)^2], at least n/log n
//       indices j <= n-2y with |c_j - 2c_{j+y} + c_{j+2y}| >= sqrt(y)
struct CoarsenessReport {
  int n = 0;
  bool s1 = false, s2 = false, s3 = false, s4 = false, s5 = false, s6 = false;
  bool well_bounded = false;  // s1 && s2 && s3
  bool coarse = false;        // well_bounded && s4 && s5 && s6

  // witness data
  int s1_index = 0;                  // first violating j (1-based), 0 if none
  std::int64_t s2_doubled_sum = 0;   // exact value of 2*sum c_j
  int s3_j = 0, s3_k = 0;            // violating pair, 0 if none
  double s4_min = 0.0;               // least-squares minimum
  double s4_a = 0.0, s4_b = 0.0;     // argmin line
  std::int64_t s5_count = 0;         // qualifying indices found
  int s6_y = 0;                      // first failing y, 0 if none
  std::int64_t s6_count_at_y = 0;    // qualifying indices at that y
};

CoarsenessReport check_coarse(const CoefficientSequence& c);  // pre: n >= 3

}  // namespace dicelab

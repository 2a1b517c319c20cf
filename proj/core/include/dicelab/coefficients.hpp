#pragma once

#include <cstdint>
#include <vector>

#include "dicelab/die.hpp"

namespace dicelab {

// c_j = sum_{k<j} btilde_k + btilde_j/2 - (j - 1/2), a half-integer; stored
// doubled so all arithmetic stays integral.  For a valid frequency vector
// sum_j c_j = 0, and sum_j c_j(B) * atilde_j(A) equals the margin of A vs B.
struct CoefficientSequence {
  int n = 0;
  std::vector<std::int64_t> doubled_c;
};

CoefficientSequence coefficient_sequence(const FrequencyVector& fb);

std::int64_t doubled_margin_via_coefficients(const FrequencyVector& fa,
                                             const CoefficientSequence& cb);

}  // namespace dicelab

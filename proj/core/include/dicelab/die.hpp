#pragma once

#include <cstdint>
#include <vector>

#include "dicelab/error.hpp"

namespace dicelab {

using FaceVector = std::vector<std::int64_t>;

// A die is a length-n face vector with every face in [1,n] and face sum
// n(n+1)/2.  unchecked() skips validation for legacy examples (Efron dice)
// that compare() accepts but the models exclude.
struct Die {
  int n = 0;
  FaceVector faces;
};

Die new_die(FaceVector faces);        // errors: FaceOutOfRange, BadSum
Die unchecked_die(FaceVector faces);  // no validation

struct FrequencyVector {
  int n = 0;
  std::vector<std::int64_t> counts;  // counts[i-1] = #{j : faces[j] == i}
};

enum class Outcome : std::int8_t { Win, Loss, Tie };

const char* outcome_name(Outcome o);

// Outcome is from the first die's perspective.  doubled_margin is
// 2*(score - n^2/2) with score = sum_{j,k} (1[a_j > b_k] + 1/2[a_j == b_k]);
// it is an exact integer in [-n^2, n^2].
struct MatchResult {
  Outcome outcome = Outcome::Tie;
  std::int64_t doubled_margin = 0;
};

FrequencyVector frequency_counts(const Die& d);
Die die_from_frequency(const FrequencyVector& f);

// a_j -> n+1-a_j; preserves each model's measure and reverses outcomes.
Die complement(const Die& d);

// Exact integer comparison, computed two independent ways (sorted-merge pair
// count and the coefficient form) whenever both dice satisfy the face-range
// and face-sum constraints; the two must agree.
MatchResult compare(const Die& a, const Die& b);

}  // namespace dicelab

#include "dicelab/die.hpp"

#include <algorithm>
#include <string>

#include "dicelab/coefficients.hpp"

namespace dicelab {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Win: return "win";
    case Outcome::Loss: return "loss";
    case Outcome::Tie: return "tie";
  }
  return "?";
}

Die new_die(FaceVector faces) {
  const int n = static_cast<int>(faces.size());
  if (n < 1) fail(Err::BadSum, "empty face vector");
  std::int64_t sum = 0;
  for (std::int64_t f : faces) {
    if (f < 1 || f > n)
      fail(Err::FaceOutOfRange,
           "face " + std::to_string(f) + " outside [1," + std::to_string(n) + "]");
    sum += f;
  }
  const std::int64_t want = static_cast<std::int64_t>(n) * (n + 1) / 2;
  if (sum != want)
    fail(Err::BadSum, "face sum " + std::to_string(sum) + " != " + std::to_string(want));
  return Die{n, std::move(faces)};
}

Die unchecked_die(FaceVector faces) {
  const int n = static_cast<int>(faces.size());
  return Die{n, std::move(faces)};
}

FrequencyVector frequency_counts(const Die& d) {
  FrequencyVector f{d.n, std::vector<std::int64_t>(static_cast<std::size_t>(d.n), 0)};
  for (std::int64_t face : d.faces) {
    if (face < 1 || face > d.n)
      fail(Err::FaceOutOfRange, "frequency_counts on die with face " + std::to_string(face));
    ++f.counts[static_cast<std::size_t>(face - 1)];
  }
  return f;
}

Die die_from_frequency(const FrequencyVector& f) {
  FaceVector faces;
  faces.reserve(static_cast<std::size_t>(f.n));
  for (int i = 1; i <= f.n; ++i)
    faces.insert(faces.end(), static_cast<std::size_t>(f.counts[static_cast<std::size_t>(i - 1)]),
                 static_cast<std::int64_t>(i));
  return new_die(std::move(faces));
}

Die complement(const Die& d) {
  FaceVector faces(d.faces.size());
  for (std::size_t j = 0; j < d.faces.size(); ++j)
    faces[j] = static_cast<std::int64_t>(d.n) + 1 - d.faces[j];
  return Die{d.n, std::move(faces)};
}

namespace {

// Route 1: sorted-merge pair count.  Works for arbitrary integer faces.
std::int64_t doubled_margin_merge(const Die& a, const Die& b) {
  FaceVector sa = a.faces, sb = b.faces;
  if (!std::is_sorted(sa.begin(), sa.end())) std::sort(sa.begin(), sa.end());
  if (!std::is_sorted(sb.begin(), sb.end())) std::sort(sb.begin(), sb.end());
  const std::int64_t n = a.n;
  std::int64_t wins = 0, eqs = 0;
  std::size_t lt = 0, le = 0;
  for (std::int64_t x : sa) {
    while (lt < sb.size() && sb[lt] < x) ++lt;
    while (le < sb.size() && sb[le] <= x) ++le;
    wins += static_cast<std::int64_t>(lt);
    eqs += static_cast<std::int64_t>(le - lt);
  }
  return 2 * wins + eqs - n * n;
}

// The coefficient identity needs the full model constraint: in-range faces
// for the frequency vectors and the exact face sum, which makes
// sum_j atilde_j (2j-1) collapse to n^2.
bool constraint_satisfying(const Die& d) {
  std::int64_t sum = 0;
  for (std::int64_t f : d.faces) {
    if (f < 1 || f > d.n) return false;
    sum += f;
  }
  return sum == static_cast<std::int64_t>(d.n) * (d.n + 1) / 2;
}

}  // namespace

MatchResult compare(const Die& a, const Die& b) {
  if (a.n != b.n)
    fail(Err::DimensionMismatch,
         "compare n=" + std::to_string(a.n) + " vs n=" + std::to_string(b.n));
  const std::int64_t dm = doubled_margin_merge(a, b);
  if (constraint_satisfying(a) && constraint_satisfying(b)) {
    // Route 2: coefficient form of the frequency counts; must agree exactly.
    const std::int64_t dm2 =
        doubled_margin_via_coefficients(frequency_counts(a),
                                        coefficient_sequence(frequency_counts(b)));
    if (dm != dm2)
      throw std::logic_error("compare: pair-count and coefficient margins disagree: " +
                             std::to_string(dm) + " vs " + std::to_string(dm2));
  }
  MatchResult r;
  r.doubled_margin = dm;
  r.outcome = dm > 0 ? Outcome::Win : dm < 0 ? Outcome::Loss : Outcome::Tie;
  return r;
}

}  // namespace dicelab

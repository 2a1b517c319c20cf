#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dicelab {

// Required strict wins over m players, 1-based vertices.
struct DigraphPattern {
  int m = 0;
  std::vector<std::pair<int, int>> edges;
};

// Throws BadPattern on out-of-range vertices, loops, or a pair present in
// both orientations.
void validate_pattern(const DigraphPattern& d);

// edge, path2, path3, cycle3, cycle4, cycle5, tournament3_transitive.
DigraphPattern named_pattern(const std::string& name);
std::vector<std::string> named_pattern_list();

// {"m": 3, "edges": [[1,2],[2,3]]}
DigraphPattern pattern_from_json(const std::string& json_text);
std::string pattern_to_json(const DigraphPattern& d);

// Pairwise outcomes of an m-player round are stored as base-3 codes over the
// C(m,2) unordered pairs in lexicographic order: trit 0 = low index wins,
// 1 = high index wins, 2 = tie.
int pair_count(int m);
int pair_index(int j, int k, int m);  // 0-based, j < k

std::uint64_t encode_outcomes(int m, const std::vector<std::int8_t>& trits);
std::vector<std::int8_t> decode_outcomes(int m, std::uint64_t code);

// Lexicographically minimal code over all vertex relabelings.  Cached table
// for m <= 5; permutation scan above that; TooLarge past m = 8.
std::uint64_t canonical_code(int m, std::uint64_t code);

// Number of distinct labelled codes in the relabeling orbit.
std::uint64_t orbit_size(int m, std::uint64_t code);

// Letters w/l/t per pair, lexicographic pair order.
std::string code_to_string(int m, std::uint64_t code);

// True when the strict-win digraph encoded by `code` contains every edge of
// `d` (ties fail the event).
bool code_satisfies(const DigraphPattern& d, std::uint64_t code);

}  // namespace dicelab

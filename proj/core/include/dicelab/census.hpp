#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dicelab/die.hpp"
#include "dicelab/sampling.hpp"

namespace dicelab {

struct ExactProbability {
  std::string num;  // reduced fraction, decimal strings
  std::string den;
  double approx = 0.0;
};

// Support stored as sorted-face classes with multiplicities: the multiset
// model weights every class 1, the balanced model weights it by the number of
// orderings.  Pairwise play is order-invariant, so classes lose nothing.
struct ExactCensus {
  Model model = Model::multiset;
  int n = 0;
  std::vector<Die> classes;                      // lexicographic order
  std::vector<std::uint64_t> weights;
  std::uint64_t total_weight = 0;
  std::vector<std::vector<MatchResult>> table;   // table[i][j] = compare(i, j)
  std::map<std::uint64_t, ExactProbability> pattern2;  // canonical code -> P
  std::map<std::uint64_t, ExactProbability> pattern3;
  bool sums_verified = false;  // each family's weights add to total^m exactly
};

// n <= 8; TooLarge beyond.  Probabilities cover iid pairs and triples.
ExactCensus enumerate_exact(Model model, int n);

// Complement involution: census table maps to its transpose with outcomes
// flipped and margins negated.
bool census_involution_ok(const ExactCensus& c);

// Exact probability of a canonical code, 0 if absent.
ExactProbability census_pattern_probability(const ExactCensus& c, int m, std::uint64_t code);

std::string census_to_json(const ExactCensus& c);
ExactCensus census_from_json(const std::string& text);

}  // namespace dicelab

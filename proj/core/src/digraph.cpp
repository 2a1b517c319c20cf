#include "dicelab/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "dicelab/error.hpp"

namespace dicelab {

namespace {

constexpr int kTableMaxM = 5;
constexpr int kHardMaxM = 8;

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

void require_m(int m) {
  if (m < 2 || m > kHardMaxM) {
    fail(Err::TooLarge, "pattern codes support 2 <= m <= " + std::to_string(kHardMaxM));
  }
}

// Relabel: vertex i of the new labelling is perm[i] of the old one.
std::uint64_t permuted_code(int m, const std::vector<std::int8_t>& trits,
                            const std::vector<int>& perm) {
  std::uint64_t code = 0;
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      int a = perm[std::size_t(j)];
      int b = perm[std::size_t(k)];
      bool swapped = a > b;
      if (swapped) std::swap(a, b);
      std::int8_t t = trits[std::size_t(pair_index(a, b, m))];
      if (swapped && t != 2) t = std::int8_t(1 - t);
      code += std::uint64_t(t) * pow3(pair_index(j, k, m));
    }
  }
  return code;
}

std::vector<std::uint64_t> build_canonical_table(int m) {
  const std::uint64_t total = pow3(pair_count(m));
  std::vector<std::uint64_t> table(total);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::vector<std::int8_t> trits;
  for (std::uint64_t code = 0; code < total; ++code) {
    trits = decode_outcomes(m, code);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = code;
    while (std::next_permutation(perm.begin(), perm.end())) {
      best = std::min(best, permuted_code(m, trits, perm));
    }
    table[code] = best;
  }
  return table;
}

const std::vector<std::uint64_t>& canonical_table(int m) {
  switch (m) {
    case 2: { static const auto t = build_canonical_table(2); return t; }
    case 3: { static const auto t = build_canonical_table(3); return t; }
    case 4: { static const auto t = build_canonical_table(4); return t; }
    default: { static const auto t = build_canonical_table(5); return t; }
  }
}

}  // namespace

void validate_pattern(const DigraphPattern& d) {
  if (d.m < 1) fail(Err::BadPattern, "vertex count must be positive");
  std::set<std::pair<int, int>> seen;
  for (const auto& [j, k] : d.edges) {
    if (j < 1 || j > d.m || k < 1 || k > d.m) {
      fail(Err::BadPattern, "edge endpoint outside [1, m]");
    }
    if (j == k) fail(Err::BadPattern, "loops are not allowed");
    if (!seen.insert({j, k}).second) fail(Err::BadPattern, "duplicate edge");
    if (seen.count({k, j})) fail(Err::BadPattern, "pair present in both orientations");
  }
}

DigraphPattern named_pattern(const std::string& name) {
  if (name == "edge") return {2, {{1, 2}}};
  if (name == "path2") return {3, {{1, 2}, {2, 3}}};
  if (name == "path3") return {4, {{1, 2}, {2, 3}, {3, 4}}};
  if (name == "cycle3") return {3, {{1, 2}, {2, 3}, {3, 1}}};
  if (name == "cycle4") return {4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}};
  if (name == "cycle5") return {5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}}};
  if (name == "tournament3_transitive") return {3, {{1, 2}, {1, 3}, {2, 3}}};
  fail(Err::BadPattern, "unknown pattern name: " + name);
}

std::vector<std::string> named_pattern_list() {
  return {"edge",   "path2",  "path3", "cycle3",
          "cycle4", "cycle5", "tournament3_transitive"};
}

DigraphPattern pattern_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(Err::BadPattern, std::string("pattern JSON parse error: ") + e.what());
  }
  DigraphPattern d;
  try {
    d.m = j.at("m").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail(Err::BadPattern, "edge must be a pair");
      d.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Err::BadPattern, std::string("pattern JSON shape error: ") + e.what());
  }
  validate_pattern(d);
  return d;
}

std::string pattern_to_json(const DigraphPattern& d) {
  nlohmann::json j;
  j["m"] = d.m;
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : d.edges) j["edges"].push_back({a, b});
  return j.dump();
}

int pair_count(int m) { return m * (m - 1) / 2; }

int pair_index(int j, int k, int m) {
  return j * m - j * (j + 1) / 2 + (k - j - 1);
}

std::uint64_t encode_outcomes(int m, const std::vector<std::int8_t>& trits) {
  require_m(m);
  if (int(trits.size()) != pair_count(m)) {
    fail(Err::DimensionMismatch, "trit count must be C(m,2)");
  }
  std::uint64_t code = 0;
  std::uint64_t base = 1;
  for (std::int8_t t : trits) {
    if (t < 0 || t > 2) fail(Err::DomainError, "trit outside {0,1,2}");
    code += std::uint64_t(t) * base;
    base *= 3;
  }
  return code;
}

std::vector<std::int8_t> decode_outcomes(int m, std::uint64_t code) {
  require_m(m);
  std::vector<std::int8_t> trits(static_cast<std::size_t>(pair_count(m)));
  for (auto& t : trits) {
    t = std::int8_t(code % 3);
    code /= 3;
  }
  if (code != 0) fail(Err::DomainError, "code out of range for m");
  return trits;
}

std::uint64_t canonical_code(int m, std::uint64_t code) {
  require_m(m);
  if (m <= kTableMaxM) return canonical_table(m)[code];
  const auto trits = decode_outcomes(m, code);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = code;
  while (std::next_permutation(perm.begin(), perm.end())) {
    best = std::min(best, permuted_code(m, trits, perm));
  }
  return best;
}

std::uint64_t orbit_size(int m, std::uint64_t code) {
  require_m(m);
  const auto trits = decode_outcomes(m, code);
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::uint64_t> seen;
  do {
    seen.insert(permuted_code(m, trits, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return seen.size();
}

std::string code_to_string(int m, std::uint64_t code) {
  const auto trits = decode_outcomes(m, code);
  std::string s;
  s.reserve(trits.size());
  for (std::int8_t t : trits) s.push_back(t == 0 ? 'w' : t == 1 ? 'l' : 't');
  return s;
}

bool code_satisfies(const DigraphPattern& d, std::uint64_t code) {
  const auto trits = decode_outcomes(d.m, code);
  for (const auto& [j, k] : d.edges) {
    const int a = std::min(j, k) - 1;
    const int b = std::max(j, k) - 1;
    const std::int8_t t = trits[std::size_t(pair_index(a, b, d.m))];
    if (t == 2) return false;
    const bool low_wins = t == 0;
    if (low_wins != (j < k)) return false;
  }
  return true;
}

}  // namespace dicelab

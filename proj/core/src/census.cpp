#include "dicelab/census.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "dicelab/digraph.hpp"
#include "dicelab/error.hpp"

namespace dicelab {

namespace {

constexpr int kCensusMaxN = 8;

void enumerate_classes(int n, int slot, int min_face, int remaining, FaceVector& acc,
                       std::vector<Die>& out) {
  if (slot == n) {
    if (remaining == 0) out.push_back(unchecked_die(acc));
    return;
  }
  const int slots_left = n - slot;
  for (int v = min_face; v <= n; ++v) {
    const int rest = remaining - v;
    if (rest < v * (slots_left - 1)) break;  // nondecreasing lower bound
    if (rest > n * (slots_left - 1)) continue;
    acc[std::size_t(slot)] = v;
    enumerate_classes(n, slot + 1, v, rest, acc, out);
  }
}

std::uint64_t orderings(const Die& d) {
  std::uint64_t num = 1;
  for (int i = 2; i <= d.n; ++i) num *= std::uint64_t(i);
  std::uint64_t run = 1;
  for (std::size_t i = 1; i <= d.faces.size(); ++i) {
    if (i < d.faces.size() && d.faces[i] == d.faces[i - 1]) {
      ++run;
      continue;
    }
    for (std::uint64_t r = 2; r <= run; ++r) num /= r;
    run = 1;
  }
  return num;
}

std::int8_t outcome_trit(const MatchResult& r) {
  switch (r.outcome) {
    case Outcome::Win: return 0;
    case Outcome::Loss: return 1;
    case Outcome::Tie: return 2;
  }
  return 2;
}

ExactProbability reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  ExactProbability p;
  p.num = std::to_string(num / g);
  p.den = std::to_string(den / g);
  p.approx = double(num) / double(den);
  return p;
}

char outcome_char(Outcome o) { return o == Outcome::Win ? 'w' : o == Outcome::Loss ? 'l' : 't'; }

Outcome outcome_from_char(char c) {
  if (c == 'w') return Outcome::Win;
  if (c == 'l') return Outcome::Loss;
  if (c == 't') return Outcome::Tie;
  fail(Err::IoError, "bad outcome letter in census JSON");
}

nlohmann::json probs_to_json(const std::map<std::uint64_t, ExactProbability>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [code, p] : m) {
    j[std::to_string(code)] = {{"num", p.num}, {"den", p.den}, {"approx", p.approx}};
  }
  return j;
}

std::map<std::uint64_t, ExactProbability> probs_from_json(const nlohmann::json& j) {
  std::map<std::uint64_t, ExactProbability> m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    ExactProbability p;
    p.num = it.value().at("num").get<std::string>();
    p.den = it.value().at("den").get<std::string>();
    p.approx = it.value().at("approx").get<double>();
    m[std::stoull(it.key())] = p;
  }
  return m;
}

}  // namespace

ExactCensus enumerate_exact(Model model, int n) {
  if (n < 1) fail(Err::DomainError, "n must be >= 1");
  if (n > kCensusMaxN) {
    fail(Err::TooLarge, "exact census supports n <= " + std::to_string(kCensusMaxN));
  }

  ExactCensus c;
  c.model = model;
  c.n = n;

  FaceVector acc(static_cast<std::size_t>(n));
  enumerate_classes(n, 0, 1, n * (n + 1) / 2, acc, c.classes);

  c.weights.reserve(c.classes.size());
  for (const auto& d : c.classes) {
    c.weights.push_back(model == Model::multiset ? 1 : orderings(d));
  }
  c.total_weight = std::accumulate(c.weights.begin(), c.weights.end(), std::uint64_t(0));
  if (std::to_string(c.total_weight) != exact_support_count(model, n)) {
    fail(Err::DomainError, "census weight total disagrees with the DP table");
  }

  const std::size_t nc = c.classes.size();
  c.table.assign(nc, std::vector<MatchResult>(nc));
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      c.table[i][j] = compare(c.classes[i], c.classes[j]);
    }
  }

  std::vector<std::int8_t> trit(nc * nc);
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) trit[i * nc + j] = outcome_trit(c.table[i][j]);
  }

  const std::uint64_t w2 = c.total_weight * c.total_weight;
  const std::uint64_t w3 = w2 * c.total_weight;

  std::map<std::uint64_t, std::uint64_t> acc2;
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const std::uint64_t code = std::uint64_t(trit[i * nc + j]);
      acc2[canonical_code(2, code)] += c.weights[i] * c.weights[j];
    }
  }

  std::uint64_t canon3[27];
  for (std::uint64_t code = 0; code < 27; ++code) canon3[code] = canonical_code(3, code);

  std::uint64_t acc3f[27] = {};
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const std::uint64_t wij = c.weights[i] * c.weights[j];
      const std::uint64_t t12 = std::uint64_t(trit[i * nc + j]);
      const std::int8_t* ti = &trit[i * nc];
      const std::int8_t* tj = &trit[j * nc];
      for (std::size_t k = 0; k < nc; ++k) {
        const std::uint64_t code = t12 + 3 * std::uint64_t(ti[k]) + 9 * std::uint64_t(tj[k]);
        acc3f[canon3[code]] += wij * c.weights[k];
      }
    }
  }
  std::map<std::uint64_t, std::uint64_t> acc3;
  for (std::uint64_t code = 0; code < 27; ++code) {
    if (acc3f[code] != 0) acc3[code] = acc3f[code];
  }

  std::uint64_t sum2 = 0;
  for (const auto& [code, w] : acc2) {
    c.pattern2[code] = reduced(w, w2);
    sum2 += w;
  }
  std::uint64_t sum3 = 0;
  for (const auto& [code, w] : acc3) {
    c.pattern3[code] = reduced(w, w3);
    sum3 += w;
  }
  c.sums_verified = sum2 == w2 && sum3 == w3;
  return c;
}

bool census_involution_ok(const ExactCensus& c) {
  const std::size_t nc = c.classes.size();
  std::vector<std::size_t> comp(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    Die cd = complement(c.classes[i]);
    std::sort(cd.faces.begin(), cd.faces.end());
    const auto it = std::lower_bound(
        c.classes.begin(), c.classes.end(), cd,
        [](const Die& a, const Die& b) { return a.faces < b.faces; });
    if (it == c.classes.end() || it->faces != cd.faces) return false;
    comp[i] = std::size_t(it - c.classes.begin());
    if (c.weights[i] != c.weights[comp[i]]) return false;
  }
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const MatchResult& orig = c.table[i][j];
      const MatchResult& mapped = c.table[comp[i]][comp[j]];
      const MatchResult& flipped = c.table[j][i];
      if (mapped.outcome != flipped.outcome) return false;
      if (mapped.doubled_margin != flipped.doubled_margin) return false;
      if (orig.doubled_margin != -flipped.doubled_margin) return false;
    }
  }
  return true;
}

ExactProbability census_pattern_probability(const ExactCensus& c, int m, std::uint64_t code) {
  const auto& fam = m == 2 ? c.pattern2 : c.pattern3;
  if (m != 2 && m != 3) fail(Err::DomainError, "census patterns cover m in {2,3}");
  const auto it = fam.find(canonical_code(m, code));
  if (it != fam.end()) return it->second;
  ExactProbability zero;
  zero.num = "0";
  zero.den = "1";
  return zero;
}

std::string census_to_json(const ExactCensus& c) {
  nlohmann::json j;
  j["schema"] = "v1";
  j["kind"] = "exact_census";
  j["model"] = model_name(c.model);
  j["n"] = c.n;
  j["total_weight"] = std::to_string(c.total_weight);
  j["sums_verified"] = c.sums_verified;
  auto classes = nlohmann::json::array();
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    classes.push_back({{"faces", c.classes[i].faces}, {"weight", c.weights[i]}});
  }
  j["classes"] = std::move(classes);
  auto table = nlohmann::json::array();
  for (const auto& row : c.table) {
    auto r = nlohmann::json::array();
    for (const auto& m : row) {
      r.push_back({std::string(1, outcome_char(m.outcome)), m.doubled_margin});
    }
    table.push_back(std::move(r));
  }
  j["table"] = std::move(table);
  j["pattern2"] = probs_to_json(c.pattern2);
  j["pattern3"] = probs_to_json(c.pattern3);
  return j.dump(2);
}

ExactCensus census_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Err::IoError, std::string("census JSON parse error: ") + e.what());
  }
  try {
    if (j.at("schema").get<std::string>() != "v1" ||
        j.at("kind").get<std::string>() != "exact_census") {
      fail(Err::IoError, "not a v1 census file");
    }
    ExactCensus c;
    c.model = j.at("model").get<std::string>() == "multiset" ? Model::multiset
                                                             : Model::balanced_sequence;
    c.n = j.at("n").get<int>();
    c.total_weight = std::stoull(j.at("total_weight").get<std::string>());
    c.sums_verified = j.at("sums_verified").get<bool>();
    for (const auto& e : j.at("classes")) {
      c.classes.push_back(unchecked_die(e.at("faces").get<FaceVector>()));
      c.weights.push_back(e.at("weight").get<std::uint64_t>());
    }
    for (const auto& row : j.at("table")) {
      std::vector<MatchResult> r;
      for (const auto& e : row) {
        MatchResult m;
        m.outcome = outcome_from_char(e.at(0).get<std::string>().at(0));
        m.doubled_margin = e.at(1).get<std::int64_t>();
        r.push_back(m);
      }
      c.table.push_back(std::move(r));
    }
    c.pattern2 = probs_from_json(j.at("pattern2"));
    c.pattern3 = probs_from_json(j.at("pattern3"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(Err::IoError, std::string("census JSON shape error: ") + e.what());
  }
}

}  // namespace dicelab

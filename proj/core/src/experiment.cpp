#include "dicelab/experiment.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "dicelab/coarseness.hpp"
#include "dicelab/coefficients.hpp"
#include "dicelab/digraph.hpp"
#include "dicelab/error.hpp"
#include "dicelab/ks.hpp"
#include "substreams.hpp"

namespace dicelab {

namespace {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.N < 1) fail(Err::BadConfig, "N must be >= 1");
  if (cfg.m < 2) fail(Err::BadConfig, "m must be >= 2");
  if (cfg.n < 1) fail(Err::BadConfig, "n must be >= 1");
  if (cfg.substreams < 1) fail(Err::BadConfig, "substreams must be >= 1");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
  return splitmix64(state);
}

struct TallyState {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t ties = 0;
  std::vector<std::int64_t> margins;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  canonical_code(cfg.m, 0);  // surfaces TooLarge before any sampling

  const int m = cfg.m;
  const int pairs = pair_count(m);
  const std::uint64_t cap_total = cfg.margin_cap;

  auto states = run_substreams<TallyState>(
      cfg.N, cfg.substreams, cfg.threads,
      [&cfg, m, pairs, cap_total](int stream, std::uint64_t count, TallyState& st) {
        const std::uint64_t cap =
            cap_total / std::uint64_t(cfg.substreams) +
            (std::uint64_t(stream) < cap_total % std::uint64_t(cfg.substreams));
        std::vector<Rng> rngs;
        std::vector<std::unique_ptr<DieSampler>> samplers;
        rngs.reserve(std::size_t(m));
        samplers.reserve(std::size_t(m));
        for (int j = 0; j < m; ++j) {
          rngs.emplace_back(cfg.seed,
                            stream_label("sampler", std::uint64_t(stream) * m + j));
          samplers.push_back(make_sampler(cfg.model, cfg.n, cfg.sampler, cfg.sampler_cfg));
        }
        std::vector<Die> dice(static_cast<std::size_t>(m));
        std::vector<std::int8_t> trits(static_cast<std::size_t>(pairs));
        for (std::uint64_t t = 0; t < count; ++t) {
          for (int j = 0; j < m; ++j) dice[std::size_t(j)] = samplers[std::size_t(j)]->sample(rngs[std::size_t(j)]);
          for (int j = 0; j < m; ++j) {
            for (int k = j + 1; k < m; ++k) {
              const MatchResult r = compare(dice[std::size_t(j)], dice[std::size_t(k)]);
              const int p = pair_index(j, k, m);
              trits[std::size_t(p)] =
                  r.outcome == Outcome::Win ? 0 : r.outcome == Outcome::Loss ? 1 : 2;
              if (r.outcome == Outcome::Tie) ++st.ties;
              if (st.margins.size() < cap) st.margins.push_back(r.doubled_margin);
            }
          }
          ++st.counts[canonical_code(m, encode_outcomes(m, trits))];
        }
      });

  ExperimentResult out;
  out.cfg = cfg;
  for (auto& st : states) {
    out.tie_pair_count += st.ties;
    for (const auto& [code, c] : st.counts) out.pattern_counts[code] += c;
    out.margin_samples.insert(out.margin_samples.end(), st.margins.begin(), st.margins.end());
  }
  return out;
}

double pattern_frequency(const ExperimentResult& r, std::uint64_t canonical) {
  const auto it = r.pattern_counts.find(canonical);
  if (it == r.pattern_counts.end()) return 0.0;
  return double(it->second) / double(r.cfg.N);
}

std::uint64_t cyclic3_canonical_code() {
  return canonical_code(3, encode_outcomes(3, {0, 1, 0}));
}

double intransitive_fraction(const ExperimentResult& r) {
  if (r.cfg.m != 3) fail(Err::DomainError, "intransitive fraction needs m = 3");
  return pattern_frequency(r, cyclic3_canonical_code());
}

std::string experiment_to_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["schema"] = "v1";
  j["kind"] = "experiment";
  j["config"] = {{"model", model_name(r.cfg.model)},
                 {"n", r.cfg.n},
                 {"m", r.cfg.m},
                 {"N", r.cfg.N},
                 {"seed", r.cfg.seed},
                 {"sampler", sampler_method_name(r.cfg.sampler)},
                 {"substreams", r.cfg.substreams}};
  auto patterns = nlohmann::json::object();
  for (const auto& [code, count] : r.pattern_counts) {
    const double p = double(count) / double(r.cfg.N);
    patterns[std::to_string(code)] = {
        {"outcomes", code_to_string(r.cfg.m, code)},
        {"count", count},
        {"frequency", p},
        {"ci95", 1.96 * std::sqrt(p * (1.0 - p) / double(r.cfg.N))},
        {"orbit", orbit_size(r.cfg.m, code)}};
  }
  j["pattern_counts"] = std::move(patterns);
  j["tie_pair_count"] = r.tie_pair_count;
  const double pair_total = double(r.cfg.N) * pair_count(r.cfg.m);
  const double tie_rate = double(r.tie_pair_count) / pair_total;
  j["derived"] = {{"tie_rate", tie_rate},
                  {"tie_rate_ci95", 1.96 * std::sqrt(tie_rate * (1.0 - tie_rate) / pair_total)},
                  {"n_times_tie_rate", tie_rate * r.cfg.n}};
  if (r.cfg.m == 3) j["derived"]["intransitive_fraction"] = intransitive_fraction(r);
  j["margin_samples_kept"] = r.margin_samples.size();
  return j.dump(2);
}

std::vector<ExperimentCheck> compare_to_census(const ExperimentResult& r,
                                               const ExactCensus& census) {
  if (r.cfg.m != 2 && r.cfg.m != 3) {
    fail(Err::DomainError, "census comparison covers m in {2,3}");
  }
  if (census.n != r.cfg.n || census.model != r.cfg.model) {
    fail(Err::DimensionMismatch, "census and experiment disagree on (model, n)");
  }
  const auto& fam = r.cfg.m == 2 ? census.pattern2 : census.pattern3;
  std::vector<std::uint64_t> codes;
  for (const auto& [code, p] : fam) codes.push_back(code);
  for (const auto& [code, c] : r.pattern_counts) {
    if (fam.find(code) == fam.end()) codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());

  std::vector<ExperimentCheck> checks;
  for (std::uint64_t code : codes) {
    ExperimentCheck c;
    c.code = code;
    const auto it = fam.find(code);
    c.expected = it == fam.end() ? 0.0 : it->second.approx;
    c.observed = pattern_frequency(r, code);
    c.stderr_binomial = std::sqrt(c.expected * (1.0 - c.expected) / double(r.cfg.N));
    if (c.stderr_binomial > 0.0) {
      c.deviation_se = std::abs(c.observed - c.expected) / c.stderr_binomial;
    } else {
      c.deviation_se = c.observed == c.expected ? 0.0 : 1e300;
    }
    checks.push_back(c);
  }
  return checks;
}

std::vector<TieRatePoint> tie_rate_curve(Model model, const std::vector<int>& n_grid,
                                         std::uint64_t N, std::uint64_t seed) {
  std::vector<TieRatePoint> out;
  for (int n : n_grid) {
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.n = n;
    cfg.m = 2;
    cfg.N = N;
    cfg.seed = mix_seed(seed, std::uint64_t(n));
    // One method across the whole grid keeps the curve comparable; the larger
    // n values are out of exact_dp range regardless.
    cfg.sampler = SamplerMethod::mcmc;
    cfg.margin_cap = 0;
    const ExperimentResult r = run_experiment(cfg);
    TieRatePoint p;
    p.n = n;
    p.tie_count = r.tie_pair_count;
    p.pairs = N;
    const double rate = double(r.tie_pair_count) / double(N);
    p.n_p_hat = rate * n;
    p.ci95 = 1.96 * n * std::sqrt(rate * (1.0 - rate) / double(N));
    out.push_back(p);
  }
  return out;
}

double margin_ks_distance(const ExperimentConfig& cfg, double scale_c,
                          const std::vector<double>& limit_samples) {
  if (cfg.m != 2) fail(Err::BadConfig, "margin KS needs m = 2");
  if (cfg.margin_cap < cfg.N) fail(Err::BadConfig, "margin cap must keep all m = 2 margins");
  const ExperimentResult r = run_experiment(cfg);
  std::vector<double> xs;
  xs.reserve(r.margin_samples.size());
  for (std::int64_t dm : r.margin_samples) {
    xs.push_back(scale_c * (0.5 * double(dm)) / double(cfg.n));
  }
  return ks_distance(std::move(xs), limit_samples);
}

std::vector<CoarsePoint> coarse_fraction(Model model, const std::vector<int>& n_grid,
                                         std::uint64_t N, std::uint64_t seed) {
  std::vector<CoarsePoint> out;
  for (int n : n_grid) {
    if (n < 3) fail(Err::DomainError, "coarseness grid needs n >= 3");
    SamplerConfig scfg;
    const SamplerMethod method = auto_method(model, n, scfg);
    auto sampler = make_sampler(model, n, method, scfg);
    Rng rng(mix_seed(seed, std::uint64_t(n)), stream_label("coarse", std::uint64_t(n)));
    CoarsePoint p;
    p.n = n;
    p.N = N;
    for (std::uint64_t i = 0; i < N; ++i) {
      const Die d = sampler->sample(rng);
      const CoarsenessReport rep = check_coarse(coefficient_sequence(frequency_counts(d)));
      if (rep.coarse) ++p.coarse_count;
      if (rep.well_bounded) ++p.well_bounded_count;
    }
    p.fraction = double(p.coarse_count) / double(N);
    p.ci95 = 1.96 * std::sqrt(p.fraction * (1.0 - p.fraction) / double(N));
    out.push_back(p);
  }
  return out;
}

}  // namespace dicelab

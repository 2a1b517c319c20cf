#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dicelab/census.hpp"
#include "dicelab/sampling.hpp"

namespace dicelab {

struct ExperimentConfig {
  Model model = Model::multiset;
  int n = 0;
  int m = 2;
  std::uint64_t N = 0;
  std::uint64_t seed = 0;
  SamplerMethod sampler = SamplerMethod::exact_dp;

  // engineering knobs, defaults fine everywhere
  int substreams = 64;
  int threads = 0;
  std::uint64_t margin_cap = 1u << 20;
  SamplerConfig sampler_cfg;
};

// Each tournament draws its m dice from m independent chains per substream
// ("sampler/(i*m+j)"), so the dice of one tournament never share a chain.
struct ExperimentResult {
  ExperimentConfig cfg;
  std::map<std::uint64_t, std::uint64_t> pattern_counts;  // canonical code -> count
  std::uint64_t tie_pair_count = 0;
  std::vector<std::int64_t> margin_samples;  // doubled margins, capped
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

double pattern_frequency(const ExperimentResult& r, std::uint64_t canonical);

// m=3 cyclic-tournament fraction.
double intransitive_fraction(const ExperimentResult& r);
std::uint64_t cyclic3_canonical_code();

std::string experiment_to_json(const ExperimentResult& r);

struct ExperimentCheck {
  std::uint64_t code = 0;
  double expected = 0.0;
  double observed = 0.0;
  double stderr_binomial = 0.0;
  double deviation_se = 0.0;  // |obs-exp| / SE
};

// Per-pattern comparison against the exact census (4-sigma oracle checks).
std::vector<ExperimentCheck> compare_to_census(const ExperimentResult& r,
                                               const ExactCensus& census);

struct TieRatePoint {
  int n = 0;
  std::uint64_t tie_count = 0;
  std::uint64_t pairs = 0;
  double n_p_hat = 0.0;
  double ci95 = 0.0;  // on n * p_hat
};

std::vector<TieRatePoint> tie_rate_curve(Model model, const std::vector<int>& n_grid,
                                         std::uint64_t N, std::uint64_t seed);

// m=2 margins scaled by c/n against limit H12 draws.
double margin_ks_distance(const ExperimentConfig& cfg, double scale_c,
                          const std::vector<double>& limit_samples);

struct CoarsePoint {
  int n = 0;
  std::uint64_t coarse_count = 0;
  std::uint64_t well_bounded_count = 0;
  std::uint64_t N = 0;
  double fraction = 0.0;
  double ci95 = 0.0;
};

std::vector<CoarsePoint> coarse_fraction(Model model, const std::vector<int>& n_grid,
                                         std::uint64_t N, std::uint64_t seed);

}  // namespace dicelab

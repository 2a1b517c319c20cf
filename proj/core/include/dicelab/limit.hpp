#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dicelab/digraph.hpp"
#include "dicelab/rng.hpp"
#include "dicelab/spectrum.hpp"

namespace dicelab {

struct LimitTournamentSample {
  int m = 0;
  Eigen::MatrixXd h;  // skew by construction
  int L = 0;
  double tail_variance = 0.0;
};

// tail budget = budget_factor * (2 sum_{ell<=L} sigma_ell^2); the truncated
// series must leave less than that beyond L.
struct TailPolicy {
  double budget_factor = 4e-3;
};

// Validates the truncation once, then samples cheaply.
class LimitSampler {
public:
  LimitSampler(const LimitSpectrum& spectrum, int L, TailPolicy policy = {});

  int truncation() const { return L_; }
  double tail_variance() const { return tail_variance_; }
  double entry_variance() const { return entry_variance_; }  // 2 sum sigma^2
  const std::vector<double>& sigmas() const { return sigmas_; }

  // 2L standard Gaussians per player, player-major.
  void draw_gaussians(int m, Rng& rng, std::vector<double>& g) const;
  double entry(const std::vector<double>& g, int j, int k) const;  // H_jk
  LimitTournamentSample sample(int m, Rng& rng) const;

private:
  std::vector<double> sigmas_;
  int L_ = 0;
  double tail_variance_ = 0.0;
  double entry_variance_ = 0.0;
};

LimitTournamentSample sample_h(int m, const LimitSpectrum& spectrum, int L, Rng& rng,
                               TailPolicy policy = {});

struct ProbabilityEstimate {
  double p_hat = 0.0;
  std::uint64_t n_samples = 0;
  double ci95_halfwidth = 0.0;
  std::uint64_t exact_zero_count = 0;  // required H entry exactly 0.0
};

ProbabilityEstimate digraph_probability(const DigraphPattern& d, std::uint64_t N, int L,
                                        const LimitSpectrum& spectrum, Rng& rng,
                                        TailPolicy policy = {});

// Fixed substream split ("limit/i"), so results do not depend on the worker
// count.  threads = 0 picks the hardware count.
ProbabilityEstimate digraph_probability_parallel(const DigraphPattern& d, std::uint64_t N,
                                                 int L, const LimitSpectrum& spectrum,
                                                 std::uint64_t seed, int substreams = 64,
                                                 int threads = 0, TailPolicy policy = {});

struct FlipCheck {
  ProbabilityEstimate base;
  ProbabilityEstimate transformed;
  bool equal_counts = false;
};

// Same draws, player v's Gaussians negated for the second evaluation of the
// v-reversed pattern; the per-sample events coincide, so counts match exactly.
FlipCheck vertex_flip_check(const DigraphPattern& d, int v, std::uint64_t N, int L,
                            const LimitSpectrum& spectrum, Rng& rng, TailPolicy policy = {});

// Full reversal: swap the (2l-1, 2l) coordinates for every player.
FlipCheck reversal_check(const DigraphPattern& d, std::uint64_t N, int L,
                         const LimitSpectrum& spectrum, Rng& rng, TailPolicy policy = {});

struct Tournament3Tally {
  std::array<std::uint64_t, 8> counts{};  // index bits: (h12>0, h13>0, h23>0)
  std::uint64_t ties = 0;
  std::uint64_t n_samples = 0;

  std::uint64_t intransitive() const { return counts[2] + counts[5]; }
};

Tournament3Tally limit_tournament3(std::uint64_t N, int L, const LimitSpectrum& spectrum,
                                   std::uint64_t seed, int substreams = 64, int threads = 0,
                                   TailPolicy policy = {});

struct AlphaEstimate {
  double alpha = 0.0;
  double ci95 = 0.0;
  // Dropping the tail only raises the estimate; the padded companion run
  // gives the matching lower bound (Jensen), so bias fits in this band.
  double truncation_bias = 0.0;
  std::uint64_t anomalies = 0;  // quadratic form below 1e-12
};

AlphaEstimate alpha_estimate(const LimitSpectrum& spectrum, int L, std::uint64_t N, Rng& rng,
                             TailPolicy policy = {});

AlphaEstimate alpha_estimate_parallel(const LimitSpectrum& spectrum, int L, std::uint64_t N,
                                      std::uint64_t seed, int substreams = 64, int threads = 0,
                                      TailPolicy policy = {});

// Closed form for a one-mode spectrum: alpha = 1/(8 sigma_1).
double alpha_single_mode(double sigma1);

struct WitnessResult {
  double c_used = 0.0;
  std::vector<std::vector<double>> gaussians;  // per player, 2e coordinates
  LimitTournamentSample sample;
};

// Deterministic assignment: edge l plants C*sqrt(e) at coordinates (2l-1, 2l)
// of its endpoints, everything else 1; C escalates over {4, 8, ..., 1024}.
WitnessResult witness_digraph(const DigraphPattern& d, const LimitSpectrum& spectrum);

}  // namespace dicelab

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "dicelab/die.hpp"
#include "dicelab/rng.hpp"

namespace dicelab {

enum class Model : std::int8_t { multiset, balanced_sequence };

const char* model_name(Model m);

enum class SamplerMethod : std::int8_t {
  exact_dp,
  geometric_rejection,  // multiset only (Geom(1/2) conditioned)
  uniform_rejection,    // balanced only (Pois(1) conditioned)
  mcmc,
};

const char* sampler_method_name(SamplerMethod m);

struct SamplerConfig {
  int exact_dp_max = 128;
  int rejection_max = 64;
  std::uint64_t rejection_budget = 50'000'000;  // proposals per accepted sample
  double burn_in_factor = 50.0;                 // burn-in moves = ceil(factor * n log n)
  double thin_factor = 1.0;                     // moves between draws = ceil(factor * n log n)
  int exact_batch = 1024;                       // multiset exact_dp refill size
};

// Samplers own immutable DP tables (shared per n) plus per-instance chain or
// batch state; give each parallel worker its own instance and substream.
class DieSampler {
public:
  virtual ~DieSampler() = default;
  virtual FrequencyVector sample_frequency(Rng& rng) = 0;
  virtual Die sample(Rng& rng);
  virtual bool exact() const = 0;
};

std::unique_ptr<DieSampler> make_sampler(Model model, int n, SamplerMethod method,
                                         const SamplerConfig& cfg = {});

SamplerMethod auto_method(Model model, int n, const SamplerConfig& cfg = {});

// One-shot conveniences matching the operation signatures.
Die sample_multiset(int n, Rng& rng, SamplerMethod method, const SamplerConfig& cfg = {});
Die sample_balanced_sequence(int n, Rng& rng, SamplerMethod method,
                             const SamplerConfig& cfg = {});

// Exact support sizes from the DP tables (oracle hooks for the census).
// multiset: number of valid multisets; balanced: number of valid sequences.
std::string exact_support_count(Model model, int n);

}  // namespace dicelab

#include "dicelab/limit.hpp"

#include <cmath>

#include "dicelab/error.hpp"
#include "substreams.hpp"

namespace dicelab {

namespace {

constexpr double kAlphaFront = 0.09973557010035819;  // 2^{-5/2} pi^{-1/2}
constexpr double kAnomalyFloor = 1e-12;

ProbabilityEstimate finish_estimate(std::uint64_t hits, std::uint64_t N, std::uint64_t zeros) {
  ProbabilityEstimate e;
  e.n_samples = N;
  e.exact_zero_count = zeros;
  if (N == 0) return e;
  e.p_hat = double(hits) / double(N);
  e.ci95_halfwidth = 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / double(N));
  return e;
}

struct HitState {
  std::uint64_t hits = 0;
  std::uint64_t zeros = 0;
};

struct PairEdge {
  int j, k;
};

std::vector<PairEdge> zero_based_edges(const DigraphPattern& d) {
  validate_pattern(d);
  std::vector<PairEdge> edges;
  edges.reserve(d.edges.size());
  for (const auto& [j, k] : d.edges) edges.push_back({j - 1, k - 1});
  return edges;
}

bool event_holds(const LimitSampler& sampler, const std::vector<double>& g,
                 const std::vector<PairEdge>& edges, std::uint64_t& zeros) {
  bool ok = true;
  for (const auto& e : edges) {
    const double h = sampler.entry(g, e.j, e.k);
    if (h == 0.0) ++zeros;
    if (!(h > 0.0)) ok = false;
  }
  return ok;
}

}  // namespace

LimitSampler::LimitSampler(const LimitSpectrum& spectrum, int L, TailPolicy policy) : L_(L) {
  if (L < 1) fail(Err::TruncationTooSmall, "L must be >= 1");
  if (std::size_t(L) > spectrum.sigmas.size()) {
    fail(Err::DimensionMismatch, "L exceeds the computed spectrum");
  }
  sigmas_.assign(spectrum.sigmas.begin(), spectrum.sigmas.begin() + L);
  entry_variance_ = limit_variance(spectrum, L);
  tail_variance_ = 2.0 * limit_tail_constant(spectrum) / double(L);
  const double budget = policy.budget_factor * entry_variance_;
  if (tail_variance_ > budget) {
    fail(Err::TruncationTooSmall, "tail variance exceeds the budget at this L");
  }
}

void LimitSampler::draw_gaussians(int m, Rng& rng, std::vector<double>& g) const {
  g.resize(std::size_t(m) * 2 * std::size_t(L_));
  for (auto& x : g) x = rng.normal();
}

double LimitSampler::entry(const std::vector<double>& g, int j, int k) const {
  const double* gj = g.data() + std::size_t(j) * 2 * std::size_t(L_);
  const double* gk = g.data() + std::size_t(k) * 2 * std::size_t(L_);
  double h = 0.0;
  for (int l = 0; l < L_; ++l) {
    h += sigmas_[std::size_t(l)] * (gj[2 * l] * gk[2 * l + 1] - gj[2 * l + 1] * gk[2 * l]);
  }
  return h;
}

LimitTournamentSample LimitSampler::sample(int m, Rng& rng) const {
  if (m < 1) fail(Err::DomainError, "m must be >= 1");
  LimitTournamentSample s;
  s.m = m;
  s.L = L_;
  s.tail_variance = tail_variance_;
  s.h = Eigen::MatrixXd::Zero(m, m);
  std::vector<double> g;
  draw_gaussians(m, rng, g);
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      const double h = entry(g, j, k);
      s.h(j, k) = h;
      s.h(k, j) = -h;
    }
  }
  return s;
}

LimitTournamentSample sample_h(int m, const LimitSpectrum& spectrum, int L, Rng& rng,
                               TailPolicy policy) {
  return LimitSampler(spectrum, L, policy).sample(m, rng);
}

ProbabilityEstimate digraph_probability(const DigraphPattern& d, std::uint64_t N, int L,
                                        const LimitSpectrum& spectrum, Rng& rng,
                                        TailPolicy policy) {
  const LimitSampler sampler(spectrum, L, policy);
  const auto edges = zero_based_edges(d);
  std::uint64_t hits = 0;
  std::uint64_t zeros = 0;
  std::vector<double> g;
  for (std::uint64_t i = 0; i < N; ++i) {
    sampler.draw_gaussians(d.m, rng, g);
    if (event_holds(sampler, g, edges, zeros)) ++hits;
  }
  return finish_estimate(hits, N, zeros);
}

ProbabilityEstimate digraph_probability_parallel(const DigraphPattern& d, std::uint64_t N,
                                                 int L, const LimitSpectrum& spectrum,
                                                 std::uint64_t seed, int substreams,
                                                 int threads, TailPolicy policy) {
  const LimitSampler sampler(spectrum, L, policy);
  const auto edges = zero_based_edges(d);
  const int m = d.m;
  auto states = run_substreams<HitState>(
      N, substreams, threads,
      [&sampler, &edges, m, seed](int stream, std::uint64_t count, HitState& st) {
        Rng rng(seed, stream_label("limit", std::uint64_t(stream)));
        std::vector<double> g;
        for (std::uint64_t i = 0; i < count; ++i) {
          sampler.draw_gaussians(m, rng, g);
          if (event_holds(sampler, g, edges, st.zeros)) ++st.hits;
        }
      });
  std::uint64_t hits = 0;
  std::uint64_t zeros = 0;
  for (const auto& st : states) {
    hits += st.hits;
    zeros += st.zeros;
  }
  return finish_estimate(hits, N, zeros);
}

FlipCheck vertex_flip_check(const DigraphPattern& d, int v, std::uint64_t N, int L,
                            const LimitSpectrum& spectrum, Rng& rng, TailPolicy policy) {
  if (v < 1 || v > d.m) fail(Err::BadPattern, "flip vertex outside [1, m]");
  const LimitSampler sampler(spectrum, L, policy);
  const auto edges = zero_based_edges(d);
  DigraphPattern flipped = d;
  for (auto& [j, k] : flipped.edges) {
    if (j == v || k == v) std::swap(j, k);
  }
  const auto flipped_edges = zero_based_edges(flipped);

  std::uint64_t hits_base = 0, hits_flip = 0, zeros_base = 0, zeros_flip = 0;
  std::vector<double> g;
  std::vector<double> g2;
  const std::size_t stride = 2 * std::size_t(L);
  for (std::uint64_t i = 0; i < N; ++i) {
    sampler.draw_gaussians(d.m, rng, g);
    if (event_holds(sampler, g, edges, zeros_base)) ++hits_base;
    g2 = g;
    for (std::size_t c = 0; c < stride; ++c) g2[std::size_t(v - 1) * stride + c] *= -1.0;
    if (event_holds(sampler, g2, flipped_edges, zeros_flip)) ++hits_flip;
  }
  FlipCheck out;
  out.base = finish_estimate(hits_base, N, zeros_base);
  out.transformed = finish_estimate(hits_flip, N, zeros_flip);
  out.equal_counts = hits_base == hits_flip;
  return out;
}

FlipCheck reversal_check(const DigraphPattern& d, std::uint64_t N, int L,
                         const LimitSpectrum& spectrum, Rng& rng, TailPolicy policy) {
  const LimitSampler sampler(spectrum, L, policy);
  const auto edges = zero_based_edges(d);
  DigraphPattern reversed = d;
  for (auto& [j, k] : reversed.edges) std::swap(j, k);
  const auto reversed_edges = zero_based_edges(reversed);

  std::uint64_t hits_base = 0, hits_rev = 0, zeros_base = 0, zeros_rev = 0;
  std::vector<double> g;
  std::vector<double> g2;
  for (std::uint64_t i = 0; i < N; ++i) {
    sampler.draw_gaussians(d.m, rng, g);
    if (event_holds(sampler, g, edges, zeros_base)) ++hits_base;
    g2 = g;
    for (std::size_t c = 0; c + 1 < g2.size(); c += 2) std::swap(g2[c], g2[c + 1]);
    if (event_holds(sampler, g2, reversed_edges, zeros_rev)) ++hits_rev;
  }
  FlipCheck out;
  out.base = finish_estimate(hits_base, N, zeros_base);
  out.transformed = finish_estimate(hits_rev, N, zeros_rev);
  out.equal_counts = hits_base == hits_rev;
  return out;
}

Tournament3Tally limit_tournament3(std::uint64_t N, int L, const LimitSpectrum& spectrum,
                                   std::uint64_t seed, int substreams, int threads,
                                   TailPolicy policy) {
  const LimitSampler sampler(spectrum, L, policy);
  struct State {
    std::array<std::uint64_t, 8> counts{};
    std::uint64_t ties = 0;
  };
  auto states = run_substreams<State>(
      N, substreams, threads,
      [&sampler, seed](int stream, std::uint64_t count, State& st) {
        Rng rng(seed, stream_label("limit", std::uint64_t(stream)));
        std::vector<double> g;
        for (std::uint64_t i = 0; i < count; ++i) {
          sampler.draw_gaussians(3, rng, g);
          const double h12 = sampler.entry(g, 0, 1);
          const double h13 = sampler.entry(g, 0, 2);
          const double h23 = sampler.entry(g, 1, 2);
          if (h12 == 0.0 || h13 == 0.0 || h23 == 0.0) {
            ++st.ties;
            continue;
          }
          const int idx = 4 * (h12 > 0.0) + 2 * (h13 > 0.0) + (h23 > 0.0);
          ++st.counts[std::size_t(idx)];
        }
      });
  Tournament3Tally t;
  t.n_samples = N;
  for (const auto& st : states) {
    t.ties += st.ties;
    for (std::size_t i = 0; i < 8; ++i) t.counts[i] += st.counts[i];
  }
  return t;
}

namespace {

struct AlphaState {
  double sum = 0.0;
  double sumsq = 0.0;
  double sum_padded = 0.0;
  std::uint64_t anomalies = 0;
};

AlphaEstimate finish_alpha(const std::vector<AlphaState>& states, std::uint64_t N) {
  double sum = 0.0, sumsq = 0.0, sum_padded = 0.0;
  std::uint64_t anomalies = 0;
  for (const auto& st : states) {
    sum += st.sum;
    sumsq += st.sumsq;
    sum_padded += st.sum_padded;
    anomalies += st.anomalies;
  }
  AlphaEstimate est;
  est.anomalies = anomalies;
  if (N == 0) return est;
  const double mean = sum / double(N);
  est.alpha = kAlphaFront * mean;
  const double var = std::max(sumsq / double(N) - mean * mean, 0.0);
  est.ci95 = kAlphaFront * 1.96 * std::sqrt(var / double(N));
  est.truncation_bias = kAlphaFront * (mean - sum_padded / double(N));
  return est;
}

}  // namespace

AlphaEstimate alpha_estimate(const LimitSpectrum& spectrum, int L, std::uint64_t N, Rng& rng,
                             TailPolicy policy) {
  const LimitSampler sampler(spectrum, L, policy);
  std::vector<AlphaState> states(1);
  auto& st = states[0];
  const auto& sig = sampler.sigmas();
  const double tail = sampler.tail_variance();
  for (std::uint64_t i = 0; i < N; ++i) {
    double t = 0.0;
    for (double s : sig) {
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      t += s * s * (z1 * z1 + z2 * z2);
    }
    if (t < kAnomalyFloor) ++st.anomalies;
    const double x = 1.0 / std::sqrt(t);
    st.sum += x;
    st.sumsq += x * x;
    st.sum_padded += 1.0 / std::sqrt(t + tail);
  }
  return finish_alpha(states, N);
}

AlphaEstimate alpha_estimate_parallel(const LimitSpectrum& spectrum, int L, std::uint64_t N,
                                      std::uint64_t seed, int substreams, int threads,
                                      TailPolicy policy) {
  const LimitSampler sampler(spectrum, L, policy);
  const auto& sig = sampler.sigmas();
  const double tail = sampler.tail_variance();
  auto states = run_substreams<AlphaState>(
      N, substreams, threads,
      [&sig, tail, seed](int stream, std::uint64_t count, AlphaState& st) {
        Rng rng(seed, stream_label("limit", std::uint64_t(stream)));
        for (std::uint64_t i = 0; i < count; ++i) {
          double t = 0.0;
          for (double s : sig) {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            t += s * s * (z1 * z1 + z2 * z2);
          }
          if (t < kAnomalyFloor) ++st.anomalies;
          const double x = 1.0 / std::sqrt(t);
          st.sum += x;
          st.sumsq += x * x;
          st.sum_padded += 1.0 / std::sqrt(t + tail);
        }
      });
  return finish_alpha(states, N);
}

double alpha_single_mode(double sigma1) {
  if (sigma1 <= 0.0) fail(Err::DomainError, "sigma1 must be positive");
  return 1.0 / (8.0 * sigma1);
}

WitnessResult witness_digraph(const DigraphPattern& d, const LimitSpectrum& spectrum) {
  validate_pattern(d);
  const int e = int(d.edges.size());
  if (e < 1) fail(Err::BadPattern, "witness needs at least one edge");
  if (std::size_t(e) > spectrum.sigmas.size()) {
    fail(Err::TruncationTooSmall, "spectrum shorter than the edge count");
  }

  LimitSpectrum trunc;
  trunc.n_grid = spectrum.n_grid;
  trunc.sigmas.assign(spectrum.sigmas.begin(), spectrum.sigmas.begin() + e);
  trunc.uncertainty.assign(e, 0.0);

  const auto edges = zero_based_edges(d);
  for (double c = 4.0; c <= 1024.0; c *= 2.0) {
    const double peak = c * std::sqrt(double(e));
    WitnessResult w;
    w.c_used = c;
    w.gaussians.assign(std::size_t(d.m), std::vector<double>(2 * std::size_t(e), 1.0));
    for (int l = 0; l < e; ++l) {
      w.gaussians[std::size_t(edges[std::size_t(l)].j)][2 * std::size_t(l)] = peak;
      w.gaussians[std::size_t(edges[std::size_t(l)].k)][2 * std::size_t(l) + 1] = peak;
    }

    w.sample.m = d.m;
    w.sample.L = e;
    w.sample.tail_variance = 0.0;
    w.sample.h = Eigen::MatrixXd::Zero(d.m, d.m);
    for (int j = 0; j < d.m; ++j) {
      for (int k = j + 1; k < d.m; ++k) {
        double h = 0.0;
        for (int l = 0; l < e; ++l) {
          h += trunc.sigmas[std::size_t(l)] *
               (w.gaussians[std::size_t(j)][2 * std::size_t(l)] *
                    w.gaussians[std::size_t(k)][2 * std::size_t(l) + 1] -
                w.gaussians[std::size_t(j)][2 * std::size_t(l) + 1] *
                    w.gaussians[std::size_t(k)][2 * std::size_t(l)]);
        }
        w.sample.h(j, k) = h;
        w.sample.h(k, j) = -h;
      }
    }

    bool ok = true;
    for (const auto& ed : edges) {
      if (!(w.sample.h(ed.j, ed.k) > 0.0)) ok = false;
    }
    if (ok) return w;
  }
  fail(Err::WitnessSearchFailed, "no witness up to the C cap");
}

}  // namespace dicelab

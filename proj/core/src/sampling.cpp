#include "dicelab/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dicelab/error.hpp"

namespace dicelab {

namespace {

using bigint = boost::multiprecision::cpp_int;

int target_sum(int n) { return n * (n + 1) / 2; }

std::uint64_t chain_moves(double factor, int n) {
  if (n < 2) return 0;
  double m = std::ceil(factor * n * std::log(double(n)));
  return m < 1.0 ? 1 : std::uint64_t(m);
}

// Uniform bigint in [0, bound).
bigint below_big(Rng& rng, const bigint& bound) {
  if (bound <= 1) return 0;
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask =
      top_bits == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << top_bits) - 1);
  bigint v;
  for (;;) {
    v = 0;
    for (unsigned w = 0; w < words; ++w) {
      std::uint64_t chunk = rng.next_u64();
      if (w + 1 == words) chunk &= top_mask;
      v |= bigint(chunk) << (64 * w);
    }
    if (v < bound) return v;
  }
}

// Flattened (n+1) x (S+1) table of counts.
struct Grid {
  int n = 0;
  int S = 0;
  std::vector<bigint> a;

  Grid() = default;
  Grid(int n_, int S_) : n(n_), S(S_), a(std::size_t(n_ + 1) * (S_ + 1)) {}

  bigint& at(int k, int s) { return a[std::size_t(k) * (S + 1) + s]; }
  const bigint& at(int k, int s) const { return a[std::size_t(k) * (S + 1) + s]; }
};

// Multiset counts L_v(k, s): multisets of k faces from {1..v} with sum s.
// Forward sweep builds L_n in place; the cached grid is that top layer.
Grid build_multiset_top(int n) {
  const int S = target_sum(n);
  Grid g(n, S);
  g.at(0, 0) = 1;
  for (int v = 1; v <= n; ++v) {
    for (int k = 1; k <= n; ++k) {
      for (int s = v; s <= S; ++s) {
        g.at(k, s) += g.at(k - 1, s - v);
      }
    }
  }
  return g;
}

// Peels one face value per pass: converts L_v to L_{v-1} in place
// (k descending so row k-1 still holds L_v).
void peel_layer(Grid& g, int v) {
  for (int k = g.n; k >= 1; --k) {
    for (int s = g.S; s >= v; --s) {
      g.at(k, s) -= g.at(k - 1, s - v);
    }
  }
}

// Balanced sequences: PS(r, s) = #sequences of length r over [1..n] with sum
// <= s.  Row recurrence W(r, s) = PS(r-1, s-1) - PS(r-1, s-1-n).
Grid build_balanced_prefix(int n) {
  const int S = target_sum(n);
  Grid g(n, S);
  for (int s = 0; s <= S; ++s) g.at(0, s) = 1;
  for (int r = 1; r <= n; ++r) {
    bigint run = 0;
    for (int s = 0; s <= S; ++s) {
      bigint w = s >= 1 ? g.at(r - 1, s - 1) : bigint(0);
      if (s - 1 - n >= 0) w -= g.at(r - 1, s - 1 - n);
      run += w;
      g.at(r, s) = run;
    }
  }
  return g;
}

std::shared_ptr<const Grid> cached_grid(Model model, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const Grid>> cache;
  const auto key = std::make_pair(int(model), n);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto grid = std::make_shared<Grid>(model == Model::multiset ? build_multiset_top(n)
                                                              : build_balanced_prefix(n));
  cache.emplace(key, grid);
  return grid;
}

void require_valid_n(int n) {
  if (n < 1) fail(Err::DomainError, "n must be >= 1");
}

class ExactMultisetSampler final : public DieSampler {
public:
  ExactMultisetSampler(int n, int batch)
      : n_(n), batch_(std::max(batch, 1)), top_(cached_grid(Model::multiset, n)) {}

  bool exact() const override { return true; }

  FrequencyVector sample_frequency(Rng& rng) override {
    if (queue_.empty()) refill(rng);
    FrequencyVector f = std::move(queue_.back());
    queue_.pop_back();
    return f;
  }

private:
  // One backward sweep serves the whole batch: per layer v, read L_v at each
  // pending state, peel to L_{v-1}, then resolve every frequency count of v.
  void refill(Rng& rng) {
    const int S = target_sum(n_);
    Grid work = *top_;
    struct State {
      int k, s;
      FrequencyVector f;
    };
    std::vector<State> st(static_cast<std::size_t>(batch_));
    for (auto& x : st) {
      x.k = n_;
      x.s = S;
      x.f.n = n_;
      x.f.counts.assign(std::size_t(n_), 0);
    }
    std::vector<bigint> cur(st.size());
    for (int v = n_; v >= 1; --v) {
      for (std::size_t i = 0; i < st.size(); ++i) cur[i] = work.at(st[i].k, st[i].s);
      peel_layer(work, v);
      for (std::size_t i = 0; i < st.size(); ++i) {
        auto& x = st[i];
        const int t_max = std::min(x.k, x.s / v);
        bigint u = below_big(rng, cur[i]);
        bigint c = 0;
        int t = 0;
        for (;; ++t) {
          if (t > t_max) fail(Err::DomainError, "multiset DP walk left the table");
          c += work.at(x.k - t, x.s - t * v);
          if (c > u) break;
        }
        x.f.counts[std::size_t(v - 1)] = t;
        x.k -= t;
        x.s -= t * v;
      }
    }
    for (auto& x : st) queue_.push_back(std::move(x.f));
  }

  int n_;
  int batch_;
  std::shared_ptr<const Grid> top_;
  std::deque<FrequencyVector> queue_;
};

class ExactBalancedSampler final : public DieSampler {
public:
  explicit ExactBalancedSampler(int n)
      : n_(n), ps_(cached_grid(Model::balanced_sequence, n)) {}

  bool exact() const override { return true; }

  FrequencyVector sample_frequency(Rng& rng) override {
    return frequency_counts(sample(rng));
  }

  Die sample(Rng& rng) override {
    const Grid& ps = *ps_;
    FaceVector faces;
    faces.reserve(std::size_t(n_));
    int s = target_sum(n_);
    for (int r = n_; r >= 1; --r) {
      const int lo = std::max(1, s - (r - 1) * n_);
      const int hi = std::min(n_, s - (r - 1));
      const bigint total = at0(ps, r, s) - at0(ps, r, s - 1);
      const bigint u = below_big(rng, total);
      int a = lo, b = hi;
      while (a < b) {
        const int mid = a + (b - a) / 2;
        const bigint cum = at0(ps, r - 1, s - lo) - at0(ps, r - 1, s - mid - 1);
        if (cum > u) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      faces.push_back(a);
      s -= a;
    }
    return unchecked_die(std::move(faces));
  }

private:
  static const bigint& at0(const Grid& g, int r, int s) {
    static const bigint zero = 0;
    return s < 0 ? zero : g.at(r, s);
  }

  int n_;
  std::shared_ptr<const Grid> ps_;
};

int geometric_half(Rng& rng) {
  int x = 0;
  for (;;) {
    const int t = std::countr_one(rng.next_u64());
    x += t;
    if (t < 64) return x;
  }
}

int poisson_one(Rng& rng) {
  constexpr double inv_e = 0.36787944117144233;
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform01();
  } while (p > inv_e);
  return k - 1;
}

class RejectionSampler final : public DieSampler {
public:
  RejectionSampler(Model model, int n, std::uint64_t budget)
      : model_(model), n_(n), budget_(budget) {}

  bool exact() const override { return true; }

  FrequencyVector sample_frequency(Rng& rng) override {
    const int S = target_sum(n_);
    FrequencyVector f;
    f.n = n_;
    for (std::uint64_t tries = 0; tries < budget_; ++tries) {
      f.counts.assign(std::size_t(n_), 0);
      int k = 0;
      int w = 0;
      bool ok = true;
      for (int i = 1; i <= n_; ++i) {
        const int x = model_ == Model::multiset ? geometric_half(rng) : poisson_one(rng);
        k += x;
        w += i * x;
        if (k > n_ || w > S) {
          ok = false;
          break;
        }
        f.counts[std::size_t(i - 1)] = x;
      }
      if (ok && k == n_ && w == S) return f;
    }
    fail(Err::RejectionBudgetExceeded, "no accepted sample within the proposal budget");
  }

  Die sample(Rng& rng) override {
    Die d = die_from_frequency(sample_frequency(rng));
    if (model_ == Model::balanced_sequence) {
      for (int i = n_ - 1; i > 0; --i) {
        const auto j = rng.below(std::uint64_t(i) + 1);
        std::swap(d.faces[std::size_t(i)], d.faces[j]);
      }
    }
    return d;
  }

private:
  Model model_;
  int n_;
  std::uint64_t budget_;
};

// Random walk on faces: bump one position up, another down.  Balanced targets
// the uniform law on sequences, so in-range moves are always accepted.  The
// multiset walk runs on sorted representatives and needs the multiplicity
// ratio to stay uniform on multisets.
class McmcSampler final : public DieSampler {
public:
  McmcSampler(Model model, int n, const SamplerConfig& cfg)
      : model_(model),
        n_(n),
        burn_(chain_moves(cfg.burn_in_factor, n)),
        thin_(chain_moves(cfg.thin_factor, n)) {
    faces_.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) faces_[std::size_t(i)] = i + 1;
    if (model_ == Model::multiset) {
      counts_.assign(std::size_t(n), 1);
    }
  }

  bool exact() const override { return false; }

  FrequencyVector sample_frequency(Rng& rng) override {
    advance(rng);
    if (model_ == Model::multiset) {
      FrequencyVector f;
      f.n = n_;
      f.counts = counts_;
      return f;
    }
    return frequency_counts(unchecked_die(faces_));
  }

  Die sample(Rng& rng) override {
    if (model_ == Model::multiset) return die_from_frequency(sample_frequency(rng));
    advance(rng);
    return unchecked_die(faces_);
  }

private:
  void advance(Rng& rng) {
    const std::uint64_t moves = warmed_ ? thin_ : burn_;
    if (!warmed_) randomize_state(rng);
    warmed_ = true;
    for (std::uint64_t m = 0; m < moves; ++m) step(rng);
  }

  // Independent start: iid uniform faces repaired to the target sum.  Chains
  // sharing the deterministic 1..n start stay correlated far past the default
  // burn-in; independent starts remove that failure mode.  For the multiset
  // model this start is off-profile, and the one-step moves relax the profile
  // slowly, so large-n multiset runs should raise burn_in_factor (the tilt
  // modes need on the order of n^3 moves, not n log n).
  void randomize_state(Rng& rng) {
    const std::int64_t target = std::int64_t(n_) * (n_ + 1) / 2;
    std::int64_t sum = 0;
    for (auto& f : faces_) {
      f = std::int64_t(1 + rng.below(std::uint64_t(n_)));
      sum += f;
    }
    while (sum != target) {
      auto& f = faces_[rng.below(std::uint64_t(n_))];
      if (sum > target && f > 1) {
        --f;
        --sum;
      } else if (sum < target && f < n_) {
        ++f;
        ++sum;
      }
    }
    if (model_ == Model::multiset) {
      counts_.assign(std::size_t(n_), 0);
      for (auto f : faces_) ++counts_[std::size_t(f - 1)];
    }
  }

  void step(Rng& rng) {
    if (n_ < 2) return;
    const auto p = rng.below(std::uint64_t(n_));
    auto q = rng.below(std::uint64_t(n_) - 1);
    if (q >= p) ++q;
    if (model_ == Model::balanced_sequence) {
      auto& up = faces_[p];
      auto& down = faces_[q];
      if (up + 1 > n_ || down - 1 < 1) return;
      ++up;
      --down;
      return;
    }
    const int a = int(faces_[p]);
    const int b = int(faces_[q]);
    if (a + 1 > n_ || b - 1 < 1) return;
    const auto cnt = [&](int v) { return std::uint64_t(counts_[std::size_t(v - 1)]); };
    const std::uint64_t fwd = a == b ? cnt(a) * (cnt(a) - 1) : cnt(a) * cnt(b);
    const std::uint64_t up_after = cnt(a + 1) + 1 - (b == a + 1) + (b - 1 == a + 1);
    const std::uint64_t dn_after = cnt(b - 1) + 1 + (a + 1 == b - 1) - (a == b - 1);
    const std::uint64_t rev =
        a + 1 == b - 1 ? up_after * (up_after - 1) : up_after * dn_after;
    if (rev < fwd && !(rng.uniform01() * double(fwd) < double(rev))) return;
    --counts_[std::size_t(a - 1)];
    ++counts_[std::size_t(a)];
    --counts_[std::size_t(b - 1)];
    ++counts_[std::size_t(b - 2)];
    faces_[p] = a + 1;
    faces_[q] = b - 1;
  }

  Model model_;
  int n_;
  std::uint64_t burn_;
  std::uint64_t thin_;
  bool warmed_ = false;
  FaceVector faces_;
  std::vector<std::int64_t> counts_;
};

}  // namespace

const char* model_name(Model m) {
  return m == Model::multiset ? "multiset" : "balanced_sequence";
}

const char* sampler_method_name(SamplerMethod m) {
  switch (m) {
    case SamplerMethod::exact_dp: return "exact_dp";
    case SamplerMethod::geometric_rejection: return "geometric_rejection";
    case SamplerMethod::uniform_rejection: return "uniform_rejection";
    case SamplerMethod::mcmc: return "mcmc";
  }
  return "?";
}

Die DieSampler::sample(Rng& rng) { return die_from_frequency(sample_frequency(rng)); }

std::unique_ptr<DieSampler> make_sampler(Model model, int n, SamplerMethod method,
                                         const SamplerConfig& cfg) {
  require_valid_n(n);
  switch (method) {
    case SamplerMethod::exact_dp:
      if (n > cfg.exact_dp_max) {
        fail(Err::MethodUnavailable, "exact_dp supports n <= " + std::to_string(cfg.exact_dp_max));
      }
      if (model == Model::multiset) {
        return std::make_unique<ExactMultisetSampler>(n, cfg.exact_batch);
      }
      return std::make_unique<ExactBalancedSampler>(n);
    case SamplerMethod::geometric_rejection:
      if (model != Model::multiset) {
        fail(Err::MethodUnavailable, "geometric_rejection applies to the multiset model");
      }
      if (n > cfg.rejection_max) {
        fail(Err::MethodUnavailable,
             "geometric_rejection supports n <= " + std::to_string(cfg.rejection_max));
      }
      return std::make_unique<RejectionSampler>(model, n, cfg.rejection_budget);
    case SamplerMethod::uniform_rejection:
      if (model != Model::balanced_sequence) {
        fail(Err::MethodUnavailable, "uniform_rejection applies to the balanced model");
      }
      if (n > cfg.rejection_max) {
        fail(Err::MethodUnavailable,
             "uniform_rejection supports n <= " + std::to_string(cfg.rejection_max));
      }
      return std::make_unique<RejectionSampler>(model, n, cfg.rejection_budget);
    case SamplerMethod::mcmc:
      return std::make_unique<McmcSampler>(model, n, cfg);
  }
  fail(Err::MethodUnavailable, "unknown sampler method");
}

SamplerMethod auto_method(Model model, int n, const SamplerConfig& cfg) {
  (void)model;
  return n <= cfg.exact_dp_max ? SamplerMethod::exact_dp : SamplerMethod::mcmc;
}

Die sample_multiset(int n, Rng& rng, SamplerMethod method, const SamplerConfig& cfg) {
  SamplerConfig one = cfg;
  one.exact_batch = 1;
  return make_sampler(Model::multiset, n, method, one)->sample(rng);
}

Die sample_balanced_sequence(int n, Rng& rng, SamplerMethod method, const SamplerConfig& cfg) {
  SamplerConfig one = cfg;
  one.exact_batch = 1;
  return make_sampler(Model::balanced_sequence, n, method, one)->sample(rng);
}

std::string exact_support_count(Model model, int n) {
  require_valid_n(n);
  auto grid = cached_grid(model, n);
  const int S = target_sum(n);
  if (model == Model::multiset) return grid->at(n, S).str();
  const bigint seq = grid->at(n, S) - (S >= 1 ? grid->at(n, S - 1) : bigint(0));
  return seq.str();
}

}  // namespace dicelab

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dicelab {

// One splitmix64 step; also used to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s);

// xoshiro256++ substream derived from (seed, label, index).  Every parallel
// worker gets its own named substream, so results do not depend on the
// thread count.  Normal variates use the polar method on explicit uniforms,
// which keeps streams toolchain-independent.
class Rng {
public:
  Rng() : Rng(0, "default", 0) {}
  Rng(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

  std::uint64_t next_u64();
  double uniform01();  // [0,1), 53-bit resolution
  double normal();
  std::uint64_t below(std::uint64_t bound);  // uniform on [0, bound), unbiased

  // std-compatible shim (e.g. for std::shuffle)
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return next_u64(); }

private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Canonical substream label, e.g. stream_label("sampler", 3) == "sampler/3".
std::string stream_label(std::string_view base, std::uint64_t index);

}  // namespace dicelab

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace lel {

// SplitMix64 step: advances `state` and returns the next output.
// Used both directly (stream derivation) and to expand seeds into
// xoshiro256** state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// xoshiro256** generator with hand-rolled floating point mappings so that
// every stream is bit-reproducible across platforms and toolchains.
// Standard-library distributions are deliberately avoided: their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Lemire multiply-shift; unbiased enough for
  // n far below 2^64, which is all we ever use.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Box-Muller transform; consumes exactly two uniforms, no caching so the
  // stream position stays easy to reason about.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  double cauchy(double x0, double gamma) {
    return x0 + gamma * std::tan(M_PI * (uniform() - 0.5));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Deterministic named stream: distinct namespace paths yield independent
// generators for the same seed. Trial streams use
// {function id, algorithm id, budget}; structural streams (permutation,
// rotation) use fixed names and fixed seeds.
Rng rng_stream(std::initializer_list<std::string_view> names, std::uint64_t seed);

// Fisher-Yates shuffle of 0..n-1 driven by `rng`.
std::vector<int> random_permutation(int n, Rng& rng);

}  // namespace lel

#include "lel/rng.hpp"

namespace lel {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

Rng rng_stream(std::initializer_list<std::string_view> names,
               std::uint64_t seed) {
  std::uint64_t state = seed;
  state = splitmix64_next(state);
  for (auto name : names) {
    state ^= fnv1a(name);
    state = splitmix64_next(state);
  }
  return Rng(state);
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = rng.index(i + 1);
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace lel

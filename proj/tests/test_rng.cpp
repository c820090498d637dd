#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "lel/rng.hpp"

using namespace lel;

TEST_CASE("splitmix64 matches the published test vector") {
  std::uint64_t state = 0;
  CHECK(splitmix64_next(state) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64_next(state) == 0x6E789E6AA1B965F4ULL);
  CHECK(splitmix64_next(state) == 0x06C45D188009454FULL);
}

TEST_CASE("identical stream yields identical output") {
  Rng a = rng_stream({"trial", "s1"}, 42);
  Rng b = rng_stream({"trial", "s1"}, 42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("differing namespace separates streams at equal seed") {
  Rng a = rng_stream({"trial", "s1"}, 7);
  Rng b = rng_stream({"trial", "s2"}, 7);
  Rng c = rng_stream({"other", "s1"}, 7);
  CHECK(a.next() != b.next());
  Rng a2 = rng_stream({"trial", "s1"}, 7);
  CHECK(a2.next() != c.next());
}

TEST_CASE("differing seed separates streams at equal namespace") {
  Rng a = rng_stream({"x"}, 1);
  Rng b = rng_stream({"x"}, 2);
  CHECK(a.next() != b.next());
}

TEST_CASE("uniform stays in [0,1) and fills the range") {
  Rng rng(123);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("normal moments are sane") {
  Rng rng(99);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.02);       // ~6 sigma of the sample mean
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("below covers its range uniformly enough") {
  Rng rng(5);
  int counts[7] = {0};
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("random_permutation is a bijection") {
  Rng rng(11);
  const auto p = random_permutation(17, rng);
  std::vector<bool> seen(17, false);
  for (int v : p) {
    REQUIRE(v >= 0);
    REQUIRE(v < 17);
    CHECK(!seen[v]);
    seen[v] = true;
  }
}

#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "rdslab/rng.hpp"

using namespace rdslab;

TEST_CASE("mix_u64 matches the reference splitmix64 step") {
  CHECK(mix_u64(0) == 0xE220A8397B1DCDAFull);
}

TEST_CASE("hash_str matches published fnv-1a vectors") {
  CHECK(hash_str("") == 0xCBF29CE484222325ull);
  CHECK(hash_str("a") == 0xAF63DC4C8601EC8Cull);
  CHECK(hash_str("foobar") == 0x85944171F73967E8ull);
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
  RngStream rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_below covers its range without bias") {
  RngStream rng(2);
  CHECK(rng.uniform_below(1) == 0);
  std::array<int, 3> counts{};
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_below(3)];
  for (int c : counts) {
    CHECK(std::abs(c - n / 3) < 400);  // ~5 sigma for p=1/3
  }
  CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("weighted_index draws in proportion to weight") {
  RngStream rng(3);
  const std::vector<double> weights{1.0, 3.0};
  int hits = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    if (rng.weighted_index(weights) == 1) ++hits;
  }
  CHECK(std::abs(hits / static_cast<double>(n) - 0.75) < 0.02);

  const std::vector<double> with_zero{0.0, 2.0, 0.0, 2.0};
  for (int i = 0; i < 1000; ++i) {
    const std::size_t idx = rng.weighted_index(with_zero);
    CHECK((idx == 1 || idx == 3));
  }

  CHECK_THROWS_AS(rng.weighted_index(std::vector<double>{0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(rng.weighted_index(std::vector<double>{1.0, -0.5}), std::invalid_argument);
}

TEST_CASE("shuffle produces a permutation, first slot roughly uniform") {
  RngStream rng(4);
  std::array<int, 6> first_counts{};
  const int n = 12000;
  for (int i = 0; i < n; ++i) {
    std::vector<int> v{0, 1, 2, 3, 4, 5};
    rng.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == std::vector<int>{0, 1, 2, 3, 4, 5});
    ++first_counts[static_cast<std::size_t>(v[0])];
  }
  for (int c : first_counts) {
    CHECK(std::abs(c - n / 6) < 250);
  }
}

TEST_CASE("substreams reproduce and separate") {
  RngStream a = substream(42, "scenario_x", 7);
  RngStream b = substream(42, "scenario_x", 7);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c = substream(42, "scenario_x", 8);
  RngStream d = substream(42, "scenario_y", 7);
  RngStream e = substream(43, "scenario_x", 7);
  RngStream base = substream(42, "scenario_x", 7);
  const std::uint64_t first = base.next_u64();
  CHECK(c.next_u64() != first);
  CHECK(d.next_u64() != first);
  CHECK(e.next_u64() != first);
}

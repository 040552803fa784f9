#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "randflight/rng.hpp"

using namespace randflight;

TEST_CASE("block cipher matches the published known-answer vectors") {
  // Philox4x32-10 reference vectors (Random123 distribution, kat_vectors).
  {
    const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    const auto out = Philox4x32::block(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
        {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    const auto out = Philox4x32::block(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
}

TEST_CASE("path stream starts at counter zero") {
  PathRng rng(0, 0);
  CHECK(rng.next_u32() == 0x6627e8d5u);
  CHECK(rng.next_u32() == 0xe169c58du);
  CHECK(rng.next_u32() == 0xbc57ac4cu);
  CHECK(rng.next_u32() == 0x9b00dbd8u);
}

TEST_CASE("distinct paths and seeds give distinct streams") {
  PathRng a(0, 0), b(0, 1), c(1, 0);
  int diff_ab = 0, diff_ac = 0;
  for (int i = 0; i < 16; ++i) {
    const std::uint32_t xa = a.next_u32();
    diff_ab += (xa != b.next_u32());
    diff_ac += (xa != c.next_u32());
  }
  CHECK(diff_ab >= 15);  // cipher output: collisions are ~2^-32 events
  CHECK(diff_ac >= 15);
}

TEST_CASE("streams are reproducible") {
  PathRng a(12345, 678), b(12345, 678);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());
  PathRng c(12345, 678), d(12345, 678);
  for (int i = 0; i < 100; ++i) CHECK(c.normal() == d.normal());
}

TEST_CASE("uniform variates live strictly inside (0,1) with the right mean") {
  PathRng rng(7, 0);
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.u01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  // sd of the mean = sqrt(1/12/n); allow 4 sd.
  const double sd = std::sqrt(1.0 / 12.0 / n);
  CHECK(std::abs(sum / n - 0.5) <= 4.0 * sd);
}

TEST_CASE("exponential variates have unit mean") {
  PathRng rng(11, 3);
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = rng.exponential();
    CHECK(e > 0.0);
    sum += e;
  }
  CHECK(std::abs(sum / n - 1.0) <= 4.0 / std::sqrt(n));
}

TEST_CASE("normal variates have zero mean and unit variance") {
  PathRng rng(99, 1);
  const int n = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(n));
  // var(z^2) = 2 for a standard normal, so sd(var-hat) ~ sqrt(2/n).
  CHECK(std::abs(var - 1.0) <= 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("a normal pair consumes exactly two uniforms") {
  PathRng a(5, 5), b(5, 5);
  a.normal();
  a.normal();          // the pair
  b.next_u32();
  b.next_u32();        // skip the same two words
  CHECK(a.u01() == b.u01());
  CHECK(a.next_u32() == b.next_u32());
}

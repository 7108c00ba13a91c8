#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "trep/dyadic.hpp"

using namespace trep;
using Rng = std::mt19937_64;

namespace {

Dyadic dy(long long num, int exp) { return Dyadic(Integer(num), exp); }

Dyadic sum_of_powers(const std::vector<int>& exps) {
  Dyadic acc(0);
  for (int e : exps) acc = acc + Dyadic(1).mul_pow2(e);
  return acc;
}

}  // namespace

TEST_CASE("canonical form") {
  CHECK(dy(4, 2).num() == 1);
  CHECK(dy(4, 2).exp() == 0);
  CHECK(dy(6, 3) == dy(3, 2));
  CHECK(dy(0, 7).exp() == 0);
  CHECK(dy(-4, 3) == dy(-1, 1));
}

TEST_CASE("arithmetic examples") {
  CHECK(dy(1, 1) + dy(1, 2) == dy(3, 2));       // 1/2 + 1/4 = 3/4
  CHECK(dy(3, 3) * Dyadic(2) == dy(3, 2));      // 3/8 * 2 = 3/4
  CHECK(dy(5, 3) > dy(1, 1));                   // 5/8 > 1/2
  CHECK(Dyadic::cmp(dy(5, 3), dy(1, 1)) == 1);
}

TEST_CASE("exact group structure of addition") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    Dyadic x(Integer(static_cast<long long>(rng() % 4096) - 2048), static_cast<int>(rng() % 12));
    Dyadic y(Integer(static_cast<long long>(rng() % 4096) - 2048), static_cast<int>(rng() % 12));
    Dyadic s = x + y;
    CHECK((s - y) == x);
    CHECK(s.exp() >= 0);
    if (s.exp() > 0) CHECK(s.num() % 2 != 0);  // canonical
    Dyadic p = x * y;
    if (p.exp() > 0) CHECK(p.num() % 2 != 0);
  }
}

TEST_CASE("floor and frac") {
  CHECK(dy(5, 1).floor() == 2);   // 5/2
  CHECK(dy(-1, 1).floor() == -1);
  CHECK(dy(-1, 1).frac() == dy(1, 1));
  CHECK(dy(7, 2).frac() == dy(3, 2));
  CHECK(Dyadic(3).frac().is_zero());
}

TEST_CASE("rational conversions") {
  auto d = Dyadic::from_rational(Rational(3, 8));
  REQUIRE(d.has_value());
  CHECK(*d == dy(3, 3));
  CHECK_FALSE(Dyadic::from_rational(Rational(1, 3)).has_value());
  CHECK(dy(-5, 4).to_rational() == Rational(-5, 16));
}

TEST_CASE("power sum decomposition examples") {
  // 3/4 = 1/2 + 1/4
  CHECK(decompose_power_sum(dy(3, 2), 2) == std::vector<int>{-1, -2});
  // one split of the smallest summand: 3/4 = 1/2 + 1/8 + 1/8
  CHECK(decompose_power_sum(dy(3, 2), 3) == std::vector<int>{-1, -3, -3});
  CHECK(decompose_power_sum(dy(1, 2), 1) == std::vector<int>{-2});
  CHECK_THROWS_AS(decompose_power_sum(dy(3, 2), 1), ValidationError);
  CHECK_THROWS_AS(decompose_power_sum(Dyadic(0), 2), ValidationError);
}

TEST_CASE("power sum decomposition sums back exactly") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    Dyadic x(Integer(1 + rng() % 5000), static_cast<int>(rng() % 12));
    int pc = x.popcount();
    for (int k = pc; k <= pc + 20; ++k) {
      auto exps = decompose_power_sum(x, k);
      CHECK(static_cast<int>(exps.size()) == k);
      CHECK(std::is_sorted(exps.rbegin(), exps.rend()));
      CHECK(sum_of_powers(exps) == x);
    }
  }
}

TEST_CASE("ratio exponent") {
  CHECK(ratio_pow2_exponent(dy(1, 1), dy(1, 2)) == -1);
  CHECK(ratio_pow2_exponent(dy(1, 2), dy(1, 1)) == 1);
  CHECK(ratio_pow2_exponent(dy(3, 3), dy(3, 3)) == 0);
  CHECK_FALSE(ratio_pow2_exponent(dy(1, 1), dy(3, 2)).has_value());
}

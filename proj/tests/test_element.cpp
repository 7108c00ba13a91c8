#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/gen.hpp"
#include "trep/element.hpp"

using namespace trep;

namespace {

Dyadic dy(long long num, int exp) { return Dyadic(Integer(num), exp); }

// gamma0: slope 1/2 on [0,1/2], 2 on [1/2,3/4], 1 on [3/4,1]
FElement gamma0() {
  return FElement::from_breaks(
      {{Dyadic(0), Dyadic(0)}, {dy(1, 1), dy(1, 2)}, {dy(3, 2), dy(3, 2)}, {Dyadic(1), Dyadic(1)}});
}

// delta fixing 1/2, slope 1/2 at 0
FElement delta() {
  return FElement::from_breaks({{Dyadic(0), Dyadic(0)},
                                {dy(1, 2), dy(1, 3)},
                                {dy(3, 3), dy(3, 3)},
                                {dy(1, 1), dy(1, 1)},
                                {Dyadic(1), Dyadic(1)}});
}

}  // namespace

TEST_CASE("validation") {
  CHECK(FElement::from_breaks({{Dyadic(0), Dyadic(0)}, {Dyadic(1), Dyadic(1)}}).is_identity());
  CHECK(gamma0().breaks().size() == 4);
  // redundant interior points merge away
  FElement id = FElement::from_breaks(
      {{Dyadic(0), Dyadic(0)}, {dy(1, 1), dy(1, 1)}, {Dyadic(1), Dyadic(1)}});
  CHECK(id.is_identity());
  // slope 3 is not a power of two
  CHECK_THROWS_AS(FElement::from_breaks(
                      {{Dyadic(0), Dyadic(0)}, {dy(1, 2), dy(3, 2)}, {Dyadic(1), Dyadic(1)}}),
                  ValidationError);
  CHECK_THROWS_AS(FElement::from_breaks({{Dyadic(0), Dyadic(0)}, {Dyadic(1), dy(1, 1)}}),
                  ValidationError);
  CHECK_THROWS_AS(FElement::from_breaks(
                      {{Dyadic(0), Dyadic(0)}, {dy(1, 1), dy(1, 1)}, {dy(1, 2), dy(3, 2)},
                       {Dyadic(1), Dyadic(1)}}),
                  ValidationError);  // non-monotone x
}

TEST_CASE("evaluation examples") {
  CHECK(gamma0().evaluate(dy(5, 3)) == dy(1, 1));  // 1/4 + 2*(5/8-1/2)
  CHECK(FElement::identity().evaluate(dy(3, 3)) == dy(3, 3));
  CHECK(TElement::rotation(dy(1, 1)).evaluate(dy(3, 2)) == dy(1, 2));
  CHECK_THROWS_AS(gamma0().evaluate(Dyadic(2)), ValidationError);
}

TEST_CASE("compose and invert") {
  FElement g = gamma0();
  CHECK(compose(g, g.inverse()).is_identity());
  CHECK(compose(g.inverse(), g).is_identity());
  FElement expected_inverse = FElement::from_breaks(
      {{Dyadic(0), Dyadic(0)}, {dy(1, 2), dy(1, 1)}, {dy(3, 2), dy(3, 2)}, {Dyadic(1), Dyadic(1)}});
  CHECK(g.inverse() == expected_inverse);
  CHECK(compose(TElement::rotation(dy(1, 1)), TElement::rotation(dy(3, 2))) ==
        TElement::rotation(dy(1, 2)));
}

TEST_CASE("slope exponents") {
  FElement g = gamma0();
  CHECK(g.slope_exponent(Dyadic(0), Side::right) == -1);
  CHECK(g.slope_exponent(dy(1, 1), Side::right) == 1);
  CHECK(g.slope_exponent(dy(1, 1), Side::left) == -1);
  CHECK(g.slope_exponent(Dyadic(1), Side::left) == 0);
  CHECK(FElement::identity().slope_exponent(dy(1, 2), Side::left) == 0);
  CHECK_THROWS_AS(g.slope_exponent(Dyadic(1), Side::right), ValidationError);
  CHECK_THROWS_AS(g.slope_exponent(Dyadic(0), Side::left), ValidationError);
}

TEST_CASE("from_partitions examples") {
  CHECK(from_partitions({Dyadic(0), dy(1, 1), Dyadic(1)}, {Dyadic(0), dy(1, 2), Dyadic(1)}) ==
        gamma0());
  CHECK(from_partitions({Dyadic(0), dy(1, 2), Dyadic(1)}, {Dyadic(0), dy(1, 2), Dyadic(1)})
            .is_identity());
  FElement expected = FElement::from_breaks({{Dyadic(0), Dyadic(0)},
                                             {dy(1, 3), dy(1, 1)},
                                             {dy(1, 2), dy(3, 2)},
                                             {dy(3, 3), dy(7, 3)},
                                             {dy(7, 3), dy(15, 4)},
                                             {Dyadic(1), Dyadic(1)}});
  CHECK(from_partitions({Dyadic(0), dy(1, 2), dy(3, 3), Dyadic(1)},
                        {Dyadic(0), dy(3, 2), dy(7, 3), Dyadic(1)}) == expected);
}

TEST_CASE("from_partitions contract on random pairs") {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    auto [xs, ys] = random_partition_pair(8, rng);
    FElement g = from_partitions(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(g.evaluate(xs[i]) == ys[i]);
    // the validator is the oracle: from_breaks re-checks everything
    CHECK(FElement::from_breaks(g.breaks()) == g);
  }
}

TEST_CASE("from_partitions fixed segment") {
  // partitions agree on [1/4, 3/8] and differ elsewhere
  FElement g = from_partitions({Dyadic(0), dy(1, 3), dy(1, 2), dy(3, 3), Dyadic(1)},
                               {Dyadic(0), dy(3, 4), dy(1, 2), dy(3, 3), Dyadic(1)}, 2);
  for (int k = 0; k <= 8; ++k) {
    Dyadic x = dy(1, 2) + (dy(3, 3) - dy(1, 2)) * Dyadic(Integer(k), 3);
    CHECK(g.evaluate(x) == x);
  }
  CHECK(g.evaluate(dy(1, 3)) == dy(3, 4));  // moved outside the fixed segment

  // mismatched endpoints are rejected
  CHECK_THROWS_AS(from_partitions({Dyadic(0), dy(1, 1), Dyadic(1)},
                                  {Dyadic(0), dy(1, 2), Dyadic(1)}, 0),
                  ValidationError);
  CHECK_THROWS_AS(from_partitions({Dyadic(0), dy(1, 1), Dyadic(1)},
                                  {Dyadic(0), dy(1, 1), Dyadic(1)}, 5),
                  ValidationError);  // index out of range
}

TEST_CASE("gamma_translation") {
  FElement g = gamma_translation(dy(1, 2), dy(3, 3), dy(1, 1));
  CHECK(g == from_partitions({Dyadic(0), dy(1, 2), dy(3, 3), Dyadic(1)},
                             {Dyadic(0), dy(3, 2), dy(7, 3), Dyadic(1)}));
  CHECK_THROWS_AS(gamma_translation(dy(1, 2), dy(1, 1), Dyadic(0)), ValidationError);
  CHECK_THROWS_AS(gamma_translation(dy(1, 1), dy(3, 2), dy(1, 1)), ValidationError);

  Rng rng(107);
  for (int t = 0; t < 100; ++t) {
    Dyadic x = dy(1, 2) + dy(1, 2) * Dyadic(Integer(rng() % 257), 8);  // in [1/4, 1/2]
    Dyadic img = g.evaluate(std::min(x, dy(3, 3)));
    CHECK(img == std::min(x, dy(3, 3)) + dy(1, 1));
  }
}

TEST_CASE("fixes and supported_in") {
  FElement g = gamma0();
  CHECK(g.fixes(dy(3, 2)));
  CHECK_FALSE(g.fixes(dy(1, 1)));
  CHECK(FElement::identity().fixes(dy(1, 3)));
  CHECK(FElement::identity().supported_in(dy(1, 2), dy(1, 1)));
  CHECK_FALSE(g.supported_in(dy(1, 2), dy(1, 1)));
  FElement h = gamma_translation(dy(1, 2), dy(3, 3), dy(1, 3));
  CHECK(h.supported_in(Dyadic(0), Dyadic(1)));
  CHECK_FALSE(h.supported_in(dy(1, 1), Dyadic(1)));
}

TEST_CASE("log slope quadruple") {
  FElement d = delta();
  CHECK(d.log_slope_quadruple(dy(1, 1)) == std::array<int, 4>{-1, 0, 0, 0});
  CHECK(FElement::identity().log_slope_quadruple(dy(1, 1)) == std::array<int, 4>{0, 0, 0, 0});
  CHECK(compose(d, d).log_slope_quadruple(dy(1, 1)) == std::array<int, 4>{-2, 0, 0, 0});
  CHECK_THROWS_AS(gamma0().log_slope_quadruple(dy(1, 1)), ValidationError);
}

TEST_CASE("quadruple is a homomorphism") {
  Rng rng(109);
  Dyadic p = dy(3, 3);
  for (int t = 0; t < 100; ++t) {
    FElement g = gen::random_fixing(p, 5, rng);
    FElement h = gen::random_fixing(p, 5, rng);
    auto qg = g.log_slope_quadruple(p);
    auto qh = h.log_slope_quadruple(p);
    auto qc = compose(g, h).log_slope_quadruple(p);
    for (int j = 0; j < 4; ++j) CHECK(qc[j] == qg[j] + qh[j]);
  }
}

TEST_CASE("group laws on random elements") {
  Rng rng(113);
  for (int t = 0; t < 100; ++t) {
    FElement g = random_element(6, rng);
    FElement h = random_element(6, rng);
    FElement k = random_element(6, rng);
    CHECK(compose(compose(g, h), k) == compose(g, compose(h, k)));
    CHECK(compose(g, g.inverse()).is_identity());
    Dyadic x(Integer(rng() % 257), 8);
    CHECK(compose(g, h).evaluate(x) == g.evaluate(h.evaluate(x)));
  }
}

TEST_CASE("random_element basics") {
  FElement a = random_element(1, 42);
  CHECK(a == random_element(1, 42));  // deterministic
  CHECK(a.breaks().size() <= 3);
  Rng rng(127);
  for (int t = 0; t < 100; ++t) {
    FElement g = random_element(8, rng);
    CHECK(FElement::from_breaks(g.breaks()) == g);  // validator as oracle
  }
}

TEST_CASE("circle elements") {
  TElement r = TElement::rotation(dy(3, 3));
  CHECK(r.is_rotation());
  CHECK(r.rotation_angle() == dy(3, 3));
  TElement e = TElement::embed(gamma0());
  CHECK_FALSE(e.is_rotation());
  CHECK(e.evaluate(Dyadic(0)).is_zero());
  CHECK(TElement::embed(compose(gamma0(), delta())) ==
        compose(TElement::embed(gamma0()), TElement::embed(delta())));
  CHECK(TElement::rotation(Dyadic(1)) == TElement::identity());

  // display form reconstructs the lift
  TElement t = compose(r, e);
  CHECK(TElement::from_circle_breaks(t.circle_breaks()) == t);
}

TEST_CASE("circle composition respects the action mod 1") {
  Rng rng(131);
  for (int t = 0; t < 100; ++t) {
    TElement a = gen::random_circle(5, rng);
    TElement b = gen::random_circle(5, rng);
    Dyadic x(Integer(rng() % 257), 8);
    CHECK(compose(a, b).evaluate(x) == a.evaluate(b.evaluate(x)));
    CHECK(compose(a, a.inverse()) == TElement::identity());
  }
}

TEST_CASE("coset representatives") {
  auto [f1, h1] = TElement::rotation(dy(1, 1)).coset_repr();
  CHECK(f1 == TElement::identity());
  CHECK(h1 == dy(1, 1));

  TElement e = TElement::embed(gamma0());
  auto [f2, h2] = e.coset_repr();
  CHECK(f2 == e);
  CHECK(h2.is_zero());

  auto [f3, h3] = TElement::identity().coset_repr();
  CHECK(f3 == TElement::identity());
  CHECK(h3.is_zero());
}

TEST_CASE("coset representative is invariant on the coset") {
  Rng rng(137);
  for (int t = 0; t < 100; ++t) {
    TElement a = gen::random_circle(5, rng);
    Dyadic h(Integer(rng() % 64), 6);
    auto ra = a.coset_repr();
    auto rb = compose(a, TElement::rotation(h)).coset_repr();
    CHECK(ra.first == rb.first);
    // and the pair reassembles the element
    CHECK(compose(ra.first, TElement::rotation(ra.second)) == a);
  }
}

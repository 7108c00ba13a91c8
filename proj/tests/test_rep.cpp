#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "support/gen.hpp"
#include "trep/rep.hpp"

using namespace trep;

namespace {

Dyadic dy(long long num, int exp) { return Dyadic(Integer(num), exp); }

FElement gamma0() {
  return FElement::from_breaks(
      {{Dyadic(0), Dyadic(0)}, {dy(1, 1), dy(1, 2)}, {dy(3, 2), dy(3, 2)}, {Dyadic(1), Dyadic(1)}});
}

FElement delta() {
  return FElement::from_breaks({{Dyadic(0), Dyadic(0)},
                                {dy(1, 2), dy(1, 3)},
                                {dy(3, 3), dy(3, 3)},
                                {dy(1, 1), dy(1, 1)},
                                {Dyadic(1), Dyadic(1)}});
}

StepFunction one() { return StepFunction::constant(Coeff(Rational(1))); }

const double kTwoPiOverLn2 = 2.0 * std::acos(-1.0) / std::log(2.0);

}  // namespace

TEST_CASE("radon nikodym derivative") {
  ExpStep d = rn_derivative(gamma0());
  CHECK(d.cuts() == std::vector<Dyadic>{Dyadic(0), dy(1, 2), dy(3, 2), Dyadic(1)});
  CHECK(d.exponents() == std::vector<int>{1, -1, 0});
  CHECK(rn_derivative(FElement::identity()).is_constant_one());
  CHECK(rn_derivative(TElement::rotation(dy(3, 3))).is_constant_one());
  Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    CHECK(rn_derivative(random_element(6, rng)).integral() == Rational(1));
    CHECK(rn_derivative(gen::random_circle(5, rng)).integral() == Rational(1));
  }
}

TEST_CASE("the derivative cocycle is exact") {
  Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    FElement g = random_element(5, rng);
    FElement d = random_element(5, rng);
    CHECK(rn_derivative(compose(g, d)) ==
          rn_derivative(d).compose_with_inverse(g) + rn_derivative(g));
  }
  for (int t = 0; t < 100; ++t) {
    TElement g = gen::random_circle(4, rng);
    TElement d = gen::random_circle(4, rng);
    CHECK(rn_derivative(compose(g, d)) ==
          rn_derivative(d).compose_with_inverse(g) + rn_derivative(g));
  }
}

TEST_CASE("representation action examples") {
  CHECK(apply_pi(FElement::identity(), one()) == one());
  StepFunction acted = apply_pi(gamma0(), one());
  StepFunction expected = StepFunction::from_pieces(
      {Dyadic(0), dy(1, 2), dy(3, 2), Dyadic(1)},
      {rep_scalar(1), rep_scalar(-1), Coeff(Rational(1))});
  CHECK(acted == expected);
  CHECK(norm_sq(acted) == Coeff(Rational(1)));
}

TEST_CASE("matrix coefficients") {
  CHECK(matrix_coefficient(FElement::identity(), one(), one()) == Coeff(Rational(1)));
  Coeff expected = Coeff(Rational(1, 4)) +
                   Coeff::monomial(1, GaussSqrt2(QSqrt2(0, Rational(1, 4)))) +
                   Coeff::monomial(-1, GaussSqrt2(QSqrt2(0, Rational(1, 4))));
  Coeff got = matrix_coefficient(gamma0(), one(), one());
  CHECK(got == expected);
  CHECK(std::abs(got.eval(0.0).real() - (std::sqrt(2.0) / 2.0 + 0.25)) < 1e-9);
  CHECK(std::abs(got.eval(0.0).imag()) < 1e-12);
}

TEST_CASE("unitarity is exact") {
  Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    FElement g = random_element(6, rng);
    StepFunction f = gen::step(rng);
    StepFunction h = gen::step(rng);
    CHECK(inner_product(apply_pi(g, f), apply_pi(g, h)) == inner_product(f, h));
  }
}

TEST_CASE("the action is a homomorphism exactly") {
  Rng rng(67);
  for (int t = 0; t < 100; ++t) {
    FElement g = random_element(5, rng);
    FElement d = random_element(5, rng);
    StepFunction f = gen::step(rng);
    CHECK(apply_pi(compose(g, d), f) == apply_pi(g, apply_pi(d, f)));
  }
  for (int t = 0; t < 50; ++t) {
    TElement g = gen::random_circle(4, rng);
    TElement d = gen::random_circle(4, rng);
    StepFunction f = gen::step(rng);
    CHECK(apply_rho(compose(g, d), f) == apply_rho(g, apply_rho(d, f)));
  }
}

TEST_CASE("equivalence of parameters") {
  CHECK(equivalence_k(1.5, 1.5, 1e-9) == 0);
  CHECK(equivalence_k(0.0, kTwoPiOverLn2, 1e-9) == -1);
  CHECK(equivalence_k(kTwoPiOverLn2, 0.0, 1e-9) == 1);
  CHECK_FALSE(equivalence_k(0.0, 1.0, 1e-9).has_value());
  CHECK_THROWS_AS(equivalence_k(0.0, 0.0, 0.0), ValidationError);
}

TEST_CASE("periodicity of the acted function in s") {
  Rng rng(71);
  for (int t = 0; t < 50; ++t) {
    FElement g = random_element(5, rng);
    StepFunction f = gen::step(rng);
    StepFunction acted = apply_pi(g, f);
    double s = static_cast<double>(rng() % 1000) / 50.0;
    for (const auto& v : acted.values()) {
      auto z1 = v.eval(s);
      auto z2 = v.eval(s + kTwoPiOverLn2);
      CHECK(std::abs(z1 - z2) < 1e-9 * (1.0 + std::abs(z1)));
    }
  }
}

TEST_CASE("action probe finds witnesses") {
  auto w = probe_nontrivial_action(StepFunction::indicator(dy(1, 2), dy(1, 1)), Dyadic(0),
                                   Dyadic(1));
  REQUIRE(w.has_value());
  CHECK(w->supported_in(Dyadic(0), Dyadic(1)));
  CHECK(apply_pi(w->inverse(), StepFunction::indicator(dy(1, 2), dy(1, 1))) !=
        StepFunction::indicator(dy(1, 2), dy(1, 1)));

  CHECK_FALSE(probe_nontrivial_action(StepFunction(), Dyadic(0), Dyadic(1)).has_value());
  CHECK_FALSE(probe_nontrivial_action(StepFunction::indicator(Dyadic(0), dy(1, 2)), dy(1, 1),
                                      Dyadic(1))
                  .has_value());
}

TEST_CASE("action probe on random data") {
  Rng rng(73);
  int witnesses = 0;
  for (int t = 0; t < 100; ++t) {
    StepFunction f = gen::step(rng);
    Dyadic a(Integer(rng() % 128), 8);
    Dyadic b = a + Dyadic(1, static_cast<int>(rng() % 6));
    if (b > Dyadic(1)) b = Dyadic(1);
    if (a == b) continue;
    auto w = probe_nontrivial_action(f, a, b);
    bool vanishes = project(f, a, b).is_zero();
    CHECK(w.has_value() == !vanishes);
    if (w) {
      ++witnesses;
      CHECK(w->supported_in(a, b));
      CHECK(apply_pi(w->inverse(), f) != f);
    }
  }
  CHECK(witnesses > 20);
}

TEST_CASE("constancy probe") {
  CHECK_FALSE(constancy_witness(StepFunction::constant(
                  Coeff(GaussSqrt2(QSqrt2(Rational(1)), QSqrt2(Rational(1))))))
                  .has_value());

  StepFunction pm = StepFunction::from_pieces({Dyadic(0), dy(1, 1), Dyadic(1)},
                                              {Coeff(Rational(1)), Coeff(Rational(-1))});
  auto w = constancy_witness(pm);
  REQUIRE(w.has_value());
  CHECK(w->a == dy(1, 2));
  CHECK(w->b == dy(3, 3));
  CHECK(w->h == dy(3, 3));
  CHECK(compose_with_inverse(pm, gamma_translation(w->a, w->b, w->h)) != pm);

  auto w2 = constancy_witness(StepFunction::indicator(Dyadic(0), dy(1, 2)));
  REQUIRE(w2.has_value());
  StepFunction f2 = StepFunction::indicator(Dyadic(0), dy(1, 2));
  CHECK(compose_with_inverse(f2, gamma_translation(w2->a, w2->b, w2->h)) != f2);
}

TEST_CASE("constancy probe on random data") {
  Rng rng(79);
  for (int t = 0; t < 100; ++t) {
    StepFunction f = gen::step(rng);
    auto w = constancy_witness(f);
    CHECK(w.has_value() == !f.is_constant());
    if (w) CHECK(compose_with_inverse(f, gamma_translation(w->a, w->b, w->h)) != f);
  }
}

TEST_CASE("invariant halves") {
  CHECK(invariance_check(delta(), dy(1, 1), StepFunction::indicator(Dyadic(0), dy(1, 1))));
  CHECK(invariance_check(FElement::identity(), dy(1, 3), one()));
  CHECK(invariance_check(gamma0(), dy(3, 2), StepFunction::indicator(Dyadic(0), dy(3, 2))));
  CHECK_THROWS_AS(invariance_check(gamma0(), dy(1, 1), one()), ValidationError);
  Rng rng(83);
  for (int t = 0; t < 100; ++t) {
    Dyadic p = dy(3, 3);
    FElement g = gen::random_fixing(p, 5, rng);
    CHECK(invariance_check(g, p, gen::step(rng)));
  }
}

TEST_CASE("characters of stabilizers") {
  CharacterF chi = CharacterF::make(dy(1, 1), {Rational(1, 2), 0, 0, 0});
  CHECK(eval_character(chi, delta()) == Rational(1, 2));
  CHECK(eval_character(chi, FElement::identity()) == 0);
  CHECK_THROWS_AS(eval_character(chi, gamma0()), ValidationError);

  // multiplicativity: angles add mod 1
  Rng rng(89);
  CharacterF chi2 = CharacterF::make(dy(1, 1), {Rational(1, 3), Rational(2, 5), Rational(1, 7),
                                                Rational(3, 4)});
  for (int t = 0; t < 50; ++t) {
    FElement g = gen::random_fixing(dy(1, 1), 5, rng);
    FElement h = gen::random_fixing(dy(1, 1), 5, rng);
    CHECK(eval_character(chi2, compose(g, h)) ==
          frac_mod1(eval_character(chi2, g) + eval_character(chi2, h)));
  }
}

TEST_CASE("conjugated characters") {
  Rng rng(97);
  Dyadic q = dy(1, 1);
  CharacterF chi = CharacterF::make(q, {Rational(1, 3), Rational(1, 2), 0, Rational(2, 7)});
  for (int t = 0; t < 50; ++t) {
    FElement g = random_element(5, rng);
    Dyadic p = g.preimage(q);
    CharacterF pulled = conjugate_character(chi, g);
    CHECK(pulled.p == p);
    FElement x = gen::random_fixing(p, 4, rng);
    CHECK(eval_character(pulled, x) ==
          eval_character(chi, compose(g, compose(x, g.inverse()))));
  }
}

TEST_CASE("sections") {
  CHECK(section(dy(1, 1), dy(1, 2)) == gamma0());
  CHECK(section(dy(1, 3), dy(1, 3)).is_identity());
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    Dyadic p(Integer(1 + rng() % 255), 8);
    Dyadic q(Integer(1 + rng() % 255), 8);
    CHECK(section(p, q).evaluate(p) == q);
  }
  CHECK_THROWS_AS(section(Dyadic(0), dy(1, 1)), ValidationError);
}

TEST_CASE("root sums") {
  RootSum minus_one = RootSum::term(Rational(-1), Rational(0));
  CHECK(minus_one == RootSum::unit(Rational(1, 2)));  // sign folds to a half turn
  CHECK(RootSum::term(Rational(0), Rational(1, 3)).is_zero());
  RootSum r = RootSum::unit(Rational(1, 3)).rotated(Rational(2, 3));
  CHECK(r == RootSum::unit(Rational(0)));
  CHECK(RootSum::unit(Rational(1, 4)).is_single_unit());
}

TEST_CASE("induced action over stabilizer characters") {
  CharacterF chi = CharacterF::make(dy(1, 1), {Rational(1, 2), 0, 0, 0});
  InducedF v = InducedF::basis(dy(1, 1));
  InducedF acted = induced_apply_f(chi, delta(), v);
  // cocycle degenerates to the character: -delta_{1/2}
  InducedF expected;
  expected.add(dy(1, 1), RootSum::unit(Rational(1, 2)));
  CHECK(acted == expected);

  CHECK(induced_apply_f(chi, FElement::identity(), v) == v);

  // orbit transport: image supported on gamma(q)
  InducedF w = induced_apply_f(chi, gamma0(), InducedF::basis(dy(1, 1)));
  REQUIRE(w.terms().size() == 1);
  CHECK(w.terms().begin()->first == dy(1, 2));
  CHECK(w.terms().begin()->second.is_single_unit());
}

TEST_CASE("induced action homomorphism over stabilizer characters") {
  Rng rng(103);
  CharacterF chi = CharacterF::make(dy(1, 1), {Rational(1, 3), Rational(1, 2), Rational(1, 4),
                                               Rational(5, 7)});
  for (int t = 0; t < 50; ++t) {
    FElement g = random_element(5, rng);
    FElement h = random_element(5, rng);
    Dyadic q(Integer(1 + rng() % 255), 8);
    InducedF v = InducedF::basis(q);
    CHECK(induced_apply_f(chi, compose(g, h), v) ==
          induced_apply_f(chi, g, induced_apply_f(chi, h, v)));
  }
}

TEST_CASE("induced action over rotation characters") {
  InducedT v = InducedT::basis(TElement::identity());
  InducedT acted = induced_apply_t(CharacterR{1}, TElement::rotation(dy(1, 1)), v);
  InducedT expected;
  expected.add(TElement::identity(), RootSum::unit(Rational(1, 2)));
  CHECK(acted == expected);

  Rng rng(107);
  for (int t = 0; t < 20; ++t)
    CHECK(induced_apply_t(CharacterR{0}, gen::random_circle(4, rng), v).terms().begin()
              ->second.is_single_unit());

  InducedT acted2 = induced_apply_t(CharacterR{2}, TElement::rotation(dy(1, 2)), v);
  CHECK(acted2 == expected);  // angle 2 * 1/4 = 1/2
}

TEST_CASE("induced action homomorphism over rotation characters") {
  Rng rng(109);
  for (long long c : {0LL, 1LL, 2LL, 5LL}) {
    CharacterR chi{c};
    for (int t = 0; t < 25; ++t) {
      TElement g = gen::random_circle(4, rng);
      TElement h = gen::random_circle(4, rng);
      InducedT v = InducedT::basis(gen::random_circle(3, rng).coset_repr().first);
      CHECK(induced_apply_t(chi, compose(g, h), v) ==
            induced_apply_t(chi, g, induced_apply_t(chi, h, v)));
    }
  }
}

TEST_CASE("orbit witnesses") {
  auto pts = orbit_witness(dy(1, 1), dy(1, 2), 3);
  CHECK(pts == std::vector<Dyadic>{dy(1, 2), dy(1, 3), dy(1, 4)});
  auto right = orbit_witness(dy(1, 1), dy(3, 2), 3);
  CHECK(right.size() == 3);
  for (const auto& p : right) {
    CHECK(p > dy(1, 1));
    CHECK(p < Dyadic(1));
  }
  CHECK_THROWS_AS(orbit_witness(dy(1, 1), dy(1, 1), 2), ValidationError);
  CHECK_THROWS_AS(orbit_witness(dy(1, 1), Dyadic(0), 2), ValidationError);

  auto many = orbit_witness(dy(1, 1), dy(1, 2), 64);
  CHECK(std::set<Dyadic>(many.begin(), many.end()).size() == 64);
}

TEST_CASE("orbit of the vacuum state under rotations") {
  CHECK_FALSE(rho0_one_orbit(TElement::rotation(dy(1, 1)), 4).has_value());
  auto orb = rho0_one_orbit(TElement::embed(gamma0()), 4);
  REQUIRE(orb.has_value());
  CHECK(orb->size() == 4);
  for (const auto& f : *orb) CHECK_FALSE(f.is_constant());
  for (std::size_t i = 0; i < orb->size(); ++i)
    for (std::size_t j = i + 1; j < orb->size(); ++j) CHECK((*orb)[i] != (*orb)[j]);
}

TEST_CASE("restriction transport intertwines the two actions") {
  CHECK(restriction_transport(one()) == one());
  StepFunction f = StepFunction::indicator(Dyadic(0), dy(1, 1));
  CHECK(apply_rho(TElement::embed(gamma0()), restriction_transport(f)) ==
        restriction_transport(apply_pi(gamma0(), f)));
  Rng rng(113);
  for (int t = 0; t < 100; ++t) {
    FElement g = random_element(5, rng);
    StepFunction h = gen::step(rng);
    CHECK(apply_rho(TElement::embed(g), restriction_transport(h)) ==
          restriction_transport(apply_pi(g, h)));
  }
}

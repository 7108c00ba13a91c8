#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/gen.hpp"
#include "trep/coeff.hpp"

using namespace trep;

namespace {
const double kTwoPiOverLn2 = 2.0 * std::acos(-1.0) / std::log(2.0);
}

TEST_CASE("gauss sqrt2 field structure") {
  GaussSqrt2 x(QSqrt2(Rational(1, 2), Rational(3)), QSqrt2(Rational(-1), Rational(1, 4)));
  CHECK(x * x.inverse() == GaussSqrt2(Rational(1)));
  CHECK(x.conj().conj() == x);
  CHECK((x - x).is_zero());
  // conjugation negates only the imaginary components
  CHECK(x.conj().a() == x.a());
  CHECK(x.conj().b() == x.b());
  CHECK(x.conj().c() == -x.c());
  CHECK(x.conj().d() == -x.d());
  CHECK_THROWS_AS(GaussSqrt2().inverse(), ValidationError);
}

TEST_CASE("coeff ring examples") {
  Coeff phi = Coeff::phi(1);
  CHECK(phi * phi.conj() == Coeff(Rational(1)));  // unit modulus

  Coeff sqrt2phi = Coeff::monomial(1, GaussSqrt2::sqrt2());
  Coeff doubled = sqrt2phi + sqrt2phi;
  CHECK(doubled == Coeff::monomial(1, GaussSqrt2(QSqrt2(0, Rational(2)))));

  // conj((1+i) ph^2) = (1-i) ph^-2
  GaussSqrt2 one_plus_i(QSqrt2(Rational(1)), QSqrt2(Rational(1)));
  GaussSqrt2 one_minus_i(QSqrt2(Rational(1)), QSqrt2(Rational(-1)));
  CHECK(Coeff::monomial(2, one_plus_i).conj() == Coeff::monomial(-2, one_minus_i));
}

TEST_CASE("rep scalar") {
  CHECK(rep_scalar(0) == Coeff(Rational(1)));
  CHECK(rep_scalar(1) == Coeff::monomial(1, GaussSqrt2::sqrt2()));
  // 2^(-1/2) = (1/2) sqrt 2
  CHECK(rep_scalar(-1) == Coeff::monomial(-1, GaussSqrt2(QSqrt2(0, Rational(1, 2)))));
  // multiplicativity pins the even cases too
  for (int m = -6; m <= 6; ++m)
    CHECK(rep_scalar(m) * rep_scalar(-m) == Coeff(Rational(1)));
}

TEST_CASE("numeric evaluation examples") {
  CHECK(std::abs(Coeff::phi(1).eval(0.0) - std::complex<double>(1.0, 0.0)) < 1e-12);
  Coeff sqrt2phi = Coeff::monomial(1, GaussSqrt2::sqrt2());
  CHECK(std::abs(sqrt2phi.eval(0.0).real() - 1.4142135623730951) < 1e-12);
  // full period of the phase
  CHECK(std::abs(Coeff::phi(1).eval(kTwoPiOverLn2) - std::complex<double>(1.0, 0.0)) < 1e-9);
}

TEST_CASE("ring axioms on random elements") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    Coeff x = gen::coeff(rng), y = gen::coeff(rng), z = gen::coeff(rng);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
  }
}

TEST_CASE("numeric evaluation is a ring homomorphism") {
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    Coeff x = gen::coeff(rng, 16), y = gen::coeff(rng, 16);
    double s = static_cast<double>(rng() % 4000) / 100.0 - 20.0;
    auto xs = x.eval(s), ys = y.eval(s);
    auto prod = (x * y).eval(s);
    auto sum = (x + y).eval(s);
    double scale = std::abs(xs) * std::abs(ys) + 1.0;
    CHECK(std::abs(prod - xs * ys) / scale < 1e-10);
    CHECK(std::abs(sum - (xs + ys)) / (std::abs(xs) + std::abs(ys) + 1.0) < 1e-10);
  }
}

TEST_CASE("numeric evaluation is periodic in s") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    Coeff x = gen::coeff(rng, 8);
    double s = static_cast<double>(rng() % 2000) / 100.0;
    CHECK(std::abs(x.eval(s) - x.eval(s + kTwoPiOverLn2)) <
          1e-9 * (1.0 + std::abs(x.eval(s))));
  }
}

TEST_CASE("negative powers invert single terms only") {
  Coeff phi2 = Coeff::monomial(2, GaussSqrt2::sqrt2());
  CHECK(phi2.pow(-1) * phi2 == Coeff(Rational(1)));
  Coeff two_terms = Coeff(Rational(1)) + Coeff::phi(1);
  CHECK_THROWS_AS(two_terms.pow(-1), ValidationError);
}

#include "trep/coeff.hpp"

#include <cmath>

namespace trep {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kLn2 = std::log(2.0);
}  // namespace

double QSqrt2::to_double() const {
  return rational_to_double(a) + rational_to_double(b) * kSqrt2;
}

QSqrt2 QSqrt2::inverse() const {
  // (a + b*r2)^-1 = (a - b*r2) / (a^2 - 2 b^2); the norm vanishes only at 0
  Rational n = a * a - 2 * b * b;
  if (n == 0) throw ValidationError("division by zero");
  return {a / n, -b / n};
}

GaussSqrt2 GaussSqrt2::pow2_half(int m) {
  auto pow2_rat = [](int e) {
    if (e >= 0) return Rational(Integer(1) << e);
    return Rational(1, Integer(1) << (-e));
  };
  if (m % 2 == 0) return GaussSqrt2(QSqrt2(pow2_rat(m / 2)));
  // m odd: 2^(m/2) = 2^((m-1)/2) * sqrt(2), and m-1 is even
  return GaussSqrt2(QSqrt2(0, pow2_rat((m - 1) / 2)));
}

GaussSqrt2 GaussSqrt2::inverse() const {
  if (is_zero()) throw ValidationError("division by zero");
  // 1/(x + y i) = (x - y i) / (x^2 + y^2)
  QSqrt2 n = re_ * re_ + im_ * im_;
  QSqrt2 ninv = n.inverse();
  return {re_ * ninv, (-im_) * ninv};
}

std::complex<double> GaussSqrt2::to_complex() const {
  return {re_.to_double(), im_.to_double()};
}

void Coeff::insert(int m, const GaussSqrt2& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

Coeff Coeff::monomial(int m, const GaussSqrt2& c) {
  Coeff r;
  r.insert(m, c);
  return r;
}

bool Coeff::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 &&
         terms_.begin()->second == GaussSqrt2(Rational(1));
}

std::optional<Rational> Coeff::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (m != 0 || !c.is_rational()) return std::nullopt;
  return c.a();
}

Coeff Coeff::conj() const {
  Coeff r;
  for (const auto& [m, c] : terms_) r.insert(-m, c.conj());
  return r;
}

Coeff Coeff::pow(long long n) const {
  if (n == 0) return Coeff(Rational(1));
  Coeff base = *this;
  if (n < 0) {
    // Only single-term values are invertible inside the ring.
    if (terms_.size() != 1)
      throw ValidationError("negative power of a non-invertible coefficient");
    const auto& [m, c] = *terms_.begin();
    base = monomial(-m, c.inverse());
    n = -n;
  }
  Coeff acc(Rational(1));
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

GaussSqrt2 Coeff::eval_phi_one() const {
  GaussSqrt2 acc;
  for (const auto& [m, c] : terms_) acc = acc + c;
  return acc;
}

std::complex<double> Coeff::eval(double s) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [m, c] : terms_)
    acc += c.to_complex() * std::polar(1.0, m * s * kLn2);
  return acc;
}

Coeff operator+(const Coeff& x, const Coeff& y) {
  Coeff r = x;
  for (const auto& [m, c] : y.terms_) r.insert(m, c);
  return r;
}

Coeff operator-(const Coeff& x, const Coeff& y) { return x + (-y); }

Coeff operator*(const Coeff& x, const Coeff& y) {
  Coeff r;
  for (const auto& [mx, cx] : x.terms_)
    for (const auto& [my, cy] : y.terms_) r.insert(mx + my, cx * cy);
  return r;
}

Coeff Coeff::operator-() const {
  Coeff r;
  for (const auto& [m, c] : terms_) r.insert(m, -c);
  return r;
}

Coeff rep_scalar(int m) { return Coeff::monomial(m, GaussSqrt2::pow2_half(m)); }

}  // namespace trep

#pragma once

#include <complex>
#include <map>
#include <optional>

#include "trep/common.hpp"

namespace trep {

/// a + b*sqrt(2) with exact rational a, b.
struct QSqrt2 {
  Rational a;
  Rational b;

  QSqrt2() = default;
  QSqrt2(Rational a_, Rational b_ = Rational(0)) : a(std::move(a_)), b(std::move(b_)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  double to_double() const;

  QSqrt2 inverse() const;  // throws on zero

  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.a - y.a, x.b - y.b}; }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
    return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  QSqrt2 operator-() const { return {-a, -b}; }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }
};

/// Element of Q(i, sqrt(2)): (a + b*sqrt(2)) + (c + d*sqrt(2)) i.
class GaussSqrt2 {
 public:
  GaussSqrt2() = default;
  GaussSqrt2(QSqrt2 re, QSqrt2 im = {}) : re_(std::move(re)), im_(std::move(im)) {}
  GaussSqrt2(const Rational& a) : re_(a) {}  // NOLINT
  GaussSqrt2(int a) : re_(Rational(a)) {}    // NOLINT

  static GaussSqrt2 imag_unit() { return GaussSqrt2(QSqrt2(0), QSqrt2(1)); }
  static GaussSqrt2 sqrt2() { return GaussSqrt2(QSqrt2(0, 1)); }
  // 2^(m/2), exactly: a power of two for even m, a power of two times sqrt(2)
  // for odd m.
  static GaussSqrt2 pow2_half(int m);

  const QSqrt2& re() const { return re_; }
  const QSqrt2& im() const { return im_; }
  const Rational& a() const { return re_.a; }
  const Rational& b() const { return re_.b; }
  const Rational& c() const { return im_.a; }
  const Rational& d() const { return im_.b; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_rational() const { return re_.b == 0 && im_.is_zero(); }
  GaussSqrt2 conj() const { return {re_, -im_}; }
  GaussSqrt2 inverse() const;  // throws on zero
  std::complex<double> to_complex() const;

  friend GaussSqrt2 operator+(const GaussSqrt2& x, const GaussSqrt2& y) {
    return {x.re_ + y.re_, x.im_ + y.im_};
  }
  friend GaussSqrt2 operator-(const GaussSqrt2& x, const GaussSqrt2& y) {
    return {x.re_ - y.re_, x.im_ - y.im_};
  }
  friend GaussSqrt2 operator*(const GaussSqrt2& x, const GaussSqrt2& y) {
    return {x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_};
  }
  GaussSqrt2 operator-() const { return {-re_, -im_}; }
  friend bool operator==(const GaussSqrt2& x, const GaussSqrt2& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }
  friend bool operator!=(const GaussSqrt2& x, const GaussSqrt2& y) { return !(x == y); }

 private:
  QSqrt2 re_;
  QSqrt2 im_;
};

/// Finitely supported Laurent sum over the formal unit phase:
/// sum_m c_m * ph^m with c_m in Q(i, sqrt(2)). The phase ph stands for
/// exp(i*s*ln 2) and is bound to a real s only at numeric evaluation.
class Coeff {
 public:
  Coeff() = default;  // zero
  Coeff(const Rational& r) { insert(0, GaussSqrt2(r)); }  // NOLINT
  Coeff(int n) { insert(0, GaussSqrt2(Rational(n))); }    // NOLINT
  explicit Coeff(const GaussSqrt2& g) { insert(0, g); }

  static Coeff monomial(int m, const GaussSqrt2& c);
  static Coeff phi(int m = 1) { return monomial(m, GaussSqrt2(Rational(1))); }

  const std::map<int, GaussSqrt2>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  // Set when the value is a plain rational (single degree-zero term).
  std::optional<Rational> as_rational() const;

  Coeff conj() const;
  Coeff pow(long long n) const;
  // Substitute ph = 1 (the value at parameter s = 0).
  GaussSqrt2 eval_phi_one() const;
  // Bind the parameter: sum_m c_m * exp(i*m*s*ln 2) in double precision.
  std::complex<double> eval(double s) const;

  friend Coeff operator+(const Coeff& x, const Coeff& y);
  friend Coeff operator-(const Coeff& x, const Coeff& y);
  friend Coeff operator*(const Coeff& x, const Coeff& y);
  Coeff operator-() const;
  friend bool operator==(const Coeff& x, const Coeff& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const Coeff& x, const Coeff& y) { return !(x == y); }

 private:
  std::map<int, GaussSqrt2> terms_;  // canonical: no zero entries
  void insert(int m, const GaussSqrt2& c);
};

/// The scalar 2^(m/2) * ph^m that a slope of 2^m contributes to the
/// representation action.
Coeff rep_scalar(int m);

}  // namespace trep

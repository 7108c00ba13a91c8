#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trep/common.hpp"

namespace trep {

/// Exact dyadic rational num / 2^exp. Canonical form keeps exp == 0 or num odd.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(int n) : num_(n) {}  // NOLINT: implicit from small integers is handy
  explicit Dyadic(Integer n) : num_(std::move(n)) {}
  Dyadic(Integer n, int exp);

  // Fails when the denominator is not a power of two.
  static std::optional<Dyadic> from_rational(const Rational& r);

  const Integer& num() const { return num_; }
  int exp() const { return exp_; }

  Rational to_rational() const;
  double to_double() const;
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

  Integer floor() const;
  Dyadic frac() const;  // in [0,1)
  Dyadic mul_pow2(int k) const;
  Dyadic half() const { return mul_pow2(-1); }

  // Number of binary digits equal to 1; requires a positive value.
  int popcount() const;
  // Exponents of the binary expansion, descending; requires a positive value.
  std::vector<int> binary_exponents() const;

  std::string str() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic operator-() const;

  static int cmp(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

 private:
  Integer num_ = 0;
  int exp_ = 0;
  void canonicalize();
};

Dyadic midpoint(const Dyadic& a, const Dyadic& b);

// Exponent k with dy/dx == 2^k, when the ratio is an exact power of two.
// Both arguments must be positive.
std::optional<int> ratio_pow2_exponent(const Dyadic& dx, const Dyadic& dy);

// k powers of two summing exactly to x, exponents descending. Starts from the
// binary expansion and repeatedly splits the smallest summand in two.
std::vector<int> decompose_power_sum(const Dyadic& x, int k);

}  // namespace trep

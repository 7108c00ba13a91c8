#include "trep/dyadic.hpp"

#include <sstream>

namespace trep {

namespace {

Integer pow2(int k) {
  Integer one = 1;
  return one << k;
}

}  // namespace

Integer floor_rational(const Rational& r) {
  Integer n = boost::multiprecision::numerator(r);
  Integer d = boost::multiprecision::denominator(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

Rational frac_mod1(const Rational& r) { return r - Rational(floor_rational(r)); }

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

Dyadic::Dyadic(Integer n, int exp) : num_(std::move(n)), exp_(exp) {
  if (exp_ < 0) throw ValidationError("dyadic exponent must be non-negative");
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && num_ % 2 == 0) {
    num_ /= 2;
    --exp_;
  }
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return Dyadic(num);
  if ((den & (den - 1)) != 0) return std::nullopt;
  int e = static_cast<int>(boost::multiprecision::msb(den));
  return Dyadic(num, e);
}

Rational Dyadic::to_rational() const { return Rational(num_, pow2(exp_)); }

double Dyadic::to_double() const { return rational_to_double(to_rational()); }

Integer Dyadic::floor() const {
  Integer d = pow2(exp_);
  Integer q = num_ / d;
  if (num_ % d != 0 && num_ < 0) --q;
  return q;
}

Dyadic Dyadic::frac() const { return *this - Dyadic(floor()); }

Dyadic Dyadic::mul_pow2(int k) const {
  if (k <= 0) return Dyadic(num_, exp_ - k);
  if (exp_ >= k) return Dyadic(num_, exp_ - k);
  return Dyadic(num_ * pow2(k - exp_));
}

int Dyadic::popcount() const {
  if (num_ <= 0) throw ValidationError("popcount requires a positive value");
  Integer n = num_;
  int count = 0;
  while (n > 0) {
    if (n % 2 != 0) ++count;
    n /= 2;
  }
  return count;
}

std::vector<int> Dyadic::binary_exponents() const {
  if (num_ <= 0) throw ValidationError("binary expansion requires a positive value");
  std::vector<int> out;
  int top = static_cast<int>(boost::multiprecision::msb(num_));
  for (int b = top; b >= 0; --b) {
    if (boost::multiprecision::bit_test(num_, static_cast<unsigned>(b)))
      out.push_back(b - exp_);
  }
  return out;
}

std::string Dyadic::str() const {
  std::ostringstream os;
  os << num_;
  if (exp_ > 0) os << "/" << pow2(exp_);
  return os.str();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  int e = std::max(a.exp_, b.exp_);
  return Dyadic(a.num_ * pow2(e - a.exp_) + b.num_ * pow2(e - b.exp_), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.num_ = -r.num_;
  return r;
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
  int e = std::max(a.exp_, b.exp_);
  Integer la = a.num_ * pow2(e - a.exp_);
  Integer lb = b.num_ * pow2(e - b.exp_);
  if (la < lb) return -1;
  if (la > lb) return 1;
  return 0;
}

Dyadic midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).mul_pow2(-1); }

std::optional<int> ratio_pow2_exponent(const Dyadic& dx, const Dyadic& dy) {
  if (dx.sign() <= 0 || dy.sign() <= 0) return std::nullopt;
  int vx = static_cast<int>(boost::multiprecision::lsb(dx.num()));
  int vy = static_cast<int>(boost::multiprecision::lsb(dy.num()));
  if ((dx.num() >> vx) != (dy.num() >> vy)) return std::nullopt;
  return (vy - dy.exp()) - (vx - dx.exp());
}

std::vector<int> decompose_power_sum(const Dyadic& x, int k) {
  if (x.sign() <= 0) throw ValidationError("decompose_power_sum requires a positive value");
  if (k < 1) throw ValidationError("decompose_power_sum requires k >= 1");
  std::vector<int> exps = x.binary_exponents();
  if (static_cast<int>(exps.size()) > k)
    throw ValidationError("infeasible decomposition: k is smaller than the popcount of " + x.str());
  while (static_cast<int>(exps.size()) < k) {
    int a = exps.back();
    exps.back() = a - 1;
    exps.push_back(a - 1);
  }
  return exps;
}

}  // namespace trep

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trep/coeff.hpp"
#include "trep/element.hpp"

namespace trep {

/// Step function on [0,1): the value values()[j] is taken on the half open
/// piece [cuts()[j], cuts()[j+1]). Canonical form merges equal adjacent
/// values, so equality of canonical forms is pointwise equality.
class StepFunction {
 public:
  StepFunction();  // zero
  static StepFunction constant(Coeff v);
  static StepFunction indicator(const Dyadic& a, const Dyadic& b);
  static StepFunction from_pieces(std::vector<Dyadic> cuts, std::vector<Coeff> values);
  // Pieces given as (start point on the circle, value), starts distinct in
  // [0,1); each piece extends to the next start, cyclically.
  static StepFunction from_circle_arcs(std::vector<std::pair<Dyadic, Coeff>> arcs);

  const std::vector<Dyadic>& cuts() const { return cuts_; }
  const std::vector<Coeff>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }
  Coeff value_at(const Dyadic& x) const;  // x in [0,1)

  bool is_constant() const { return values_.size() == 1; }
  bool is_zero() const { return is_constant() && values_.front().is_zero(); }
  // Smallest closed interval outside of which the function vanishes.
  std::optional<std::pair<Dyadic, Dyadic>> support() const;

  friend bool operator==(const StepFunction& f, const StepFunction& g) {
    return f.cuts_ == g.cuts_ && f.values_ == g.values_;
  }
  friend bool operator!=(const StepFunction& f, const StepFunction& g) { return !(f == g); }

 private:
  std::vector<Dyadic> cuts_;
  std::vector<Coeff> values_;
};

/// Two step functions rewritten over their merged cut sequence, pointwise
/// equal to the inputs. Kept separate from StepFunction, whose canonical form
/// would merge the redundant cuts again.
struct Refinement {
  std::vector<Dyadic> cuts;
  std::vector<Coeff> left;
  std::vector<Coeff> right;
};
Refinement refine(const StepFunction& f, const StepFunction& g);
StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction sub(const StepFunction& f, const StepFunction& g);
StepFunction scale(const Coeff& c, const StepFunction& f);
StepFunction pointwise_mul(const StepFunction& f, const StepFunction& g);
StepFunction project(const StepFunction& f, const Dyadic& a, const Dyadic& b);
Coeff inner_product(const StepFunction& f, const StepFunction& g);
Coeff norm_sq(const StepFunction& f);
StepFunction compose_with_inverse(const StepFunction& f, const FElement& g);
StepFunction compose_with_inverse(const StepFunction& f, const TElement& t);

/// Power of two valued step function: value 2^exponents()[j] on piece j.
/// Carries the Radon-Nikodym data exactly.
class ExpStep {
 public:
  ExpStep();  // constant 1
  static ExpStep from_pieces(std::vector<Dyadic> cuts, std::vector<int> exponents);
  static ExpStep from_circle_arcs(std::vector<std::pair<Dyadic, int>> arcs);

  const std::vector<Dyadic>& cuts() const { return cuts_; }
  const std::vector<int>& exponents() const { return exponents_; }
  bool is_constant_one() const { return exponents_.size() == 1 && exponents_[0] == 0; }

  Rational integral() const;
  StepFunction to_pow_step() const;   // values 2^m as rationals
  StepFunction to_sqrt_step() const;  // values 2^(m/2)
  StepFunction to_rep_step() const;   // values rep_scalar(m)

  ExpStep compose_with_inverse(const FElement& g) const;
  ExpStep compose_with_inverse(const TElement& t) const;
  friend ExpStep operator+(const ExpStep& a, const ExpStep& b);  // pointwise exponent sum

  friend bool operator==(const ExpStep& a, const ExpStep& b) {
    return a.cuts_ == b.cuts_ && a.exponents_ == b.exponents_;
  }
  friend bool operator!=(const ExpStep& a, const ExpStep& b) { return !(a == b); }

 private:
  std::vector<Dyadic> cuts_;
  std::vector<int> exponents_;
};

}  // namespace trep

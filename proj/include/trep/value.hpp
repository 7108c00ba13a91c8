#pragma once

#include <string>
#include <variant>
#include <vector>

#include "trep/rep.hpp"

namespace trep {

/// Tuple of integers, e.g. a log slope quadruple.
struct IntTuple {
  std::vector<long long> items;
  friend bool operator==(const IntTuple&, const IntTuple&) = default;
};

/// Ordered list of dyadic points, e.g. an orbit fragment.
struct PointSet {
  std::vector<Dyadic> points;
  friend bool operator==(const PointSet&, const PointSet&) = default;
};

using Value = std::variant<Rational, Coeff, FElement, TElement, StepFunction, CharacterF,
                           CharacterR, InducedF, InducedT, IntTuple, PointSet>;

// Short lowercase tag, e.g. "coeff", "pl", "circ", "step".
std::string kind_name(const Value& v);

// Canonical textual form; parsing it back yields an equal value.
std::string to_text(const Value& v);

std::string coeff_to_text(const Coeff& c);
std::string dyadic_to_text(const Dyadic& d);
std::string f_element_to_text(const FElement& g);
std::string t_element_to_text(const TElement& t);
std::string step_to_text(const StepFunction& f);

}  // namespace trep

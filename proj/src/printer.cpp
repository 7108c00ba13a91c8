#include <algorithm>
#include <sstream>

#include "trep/value.hpp"

namespace trep {

namespace {

// Signed magnitude form "p*r2/q" of b*sqrt(2), with unit p and q dropped.
std::string sqrt2_part(const Rational& b, bool& negative) {
  Rational m = b;
  negative = m < 0;
  if (negative) m = -m;
  Integer num = boost::multiprecision::numerator(m);
  Integer den = boost::multiprecision::denominator(m);
  std::ostringstream os;
  if (num != 1) os << num << "*";
  os << "r2";
  if (den != 1) os << "/" << den;
  return os.str();
}

std::string rational_part(const Rational& a, bool& negative) {
  Rational m = a;
  negative = m < 0;
  if (negative) m = -m;
  return rational_to_string(m);
}

// "a + b*r2" with zero parts omitted and signs folded into the joins.
std::string qsqrt2_to_text(const QSqrt2& q) {
  std::vector<std::pair<bool, std::string>> parts;
  if (q.a != 0) {
    bool neg;
    std::string s = rational_part(q.a, neg);
    parts.emplace_back(neg, std::move(s));
  }
  if (q.b != 0) {
    bool neg;
    std::string s = sqrt2_part(q.b, neg);
    parts.emplace_back(neg, std::move(s));
  }
  if (parts.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i == 0) {
      if (parts[i].first) os << "-";
    } else {
      os << (parts[i].first ? " - " : " + ");
    }
    os << parts[i].second;
  }
  return os.str();
}

// Inner text of one coefficient, without the enclosing parentheses.
std::string gauss_to_text(const GaussSqrt2& g) {
  std::string re = g.re().is_zero() ? "" : qsqrt2_to_text(g.re());
  std::string im;
  if (!g.im().is_zero()) {
    if (g.im() == QSqrt2(Rational(1)))
      im = "i";
    else if (g.im() == QSqrt2(Rational(-1)))
      im = "-i";
    else if ((-g.im()).a >= 0 && (-g.im()).b >= 0 && (g.im().a < 0 || g.im().b < 0))
      im = "-(" + qsqrt2_to_text(-g.im()) + ")*i";
    else
      im = "(" + qsqrt2_to_text(g.im()) + ")*i";
  }
  if (re.empty() && im.empty()) return "0";
  if (re.empty()) return im;
  if (im.empty()) return re;
  if (im.front() == '-') return re + " - " + im.substr(1);
  return re + " + " + im;
}

}  // namespace

std::string dyadic_to_text(const Dyadic& d) { return d.str(); }

std::string coeff_to_text(const Coeff& c) {
  if (c.is_zero()) return "0";
  // Constant term first, then by increasing phase degree magnitude with the
  // positive degree before the negative one.
  std::vector<int> degrees;
  for (const auto& [m, g] : c.terms()) degrees.push_back(m);
  std::sort(degrees.begin(), degrees.end(), [](int x, int y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return x > y;
  });
  std::ostringstream os;
  bool first = true;
  for (int m : degrees) {
    if (!first) os << " + ";
    first = false;
    os << "(" << gauss_to_text(c.terms().at(m)) << ")";
    if (m == 1)
      os << "*ph";
    else if (m != 0)
      os << "*ph^" << m;
  }
  return os.str();
}

std::string f_element_to_text(const FElement& g) {
  std::ostringstream os;
  os << "pl[";
  bool first = true;
  for (const auto& [x, y] : g.breaks()) {
    if (!first) os << ",";
    first = false;
    os << "(" << x.str() << "," << y.str() << ")";
  }
  os << "]";
  return os.str();
}

std::string t_element_to_text(const TElement& t) {
  if (auto h = t.rotation_angle()) return "rot(" + h->str() + ")";
  std::ostringstream os;
  os << "circ[";
  bool first = true;
  for (const auto& [x, y] : t.circle_breaks()) {
    if (!first) os << ",";
    first = false;
    os << "(" << x.str() << "," << y.str() << ")";
  }
  os << "]";
  return os.str();
}

namespace {

std::string coeff_inline(const Coeff& c) {
  if (auto r = c.as_rational()) return rational_to_string(*r);
  return coeff_to_text(c);
}

}  // namespace

std::string step_to_text(const StepFunction& f) {
  std::ostringstream os;
  os << "step{";
  for (std::size_t j = 0; j < f.piece_count(); ++j) {
    if (j) os << "; ";
    os << f.cuts()[j].str() << ":" << f.cuts()[j + 1].str() << " => "
       << coeff_inline(f.values()[j]);
  }
  os << "}";
  return os.str();
}

namespace {

std::string charf_to_text(const CharacterF& chi) {
  std::ostringstream os;
  os << "charf(" << chi.p.str();
  for (const auto& a : chi.angles) os << ", " << rational_to_string(a);
  os << ")";
  return os.str();
}

std::string charr_to_text(const CharacterR& chi) {
  return "charr(" + std::to_string(chi.c) + ")";
}

template <class Label, class LabelText>
std::string induced_to_text(const Induced<Label>& v, LabelText label_text) {
  std::ostringstream os;
  os << "ind[";
  bool first = true;
  for (const auto& [label, sum] : v.terms()) {
    for (const auto& [amp, ang] : sum.terms()) {
      if (!first) os << ", ";
      first = false;
      os << "(" << label_text(label) << ", " << rational_to_string(amp) << ", "
         << rational_to_string(ang) << ")";
    }
  }
  os << "]";
  return os.str();
}

}  // namespace

std::string kind_name(const Value& v) {
  struct Visitor {
    std::string operator()(const Rational&) const { return "rational"; }
    std::string operator()(const Coeff&) const { return "coeff"; }
    std::string operator()(const FElement&) const { return "pl"; }
    std::string operator()(const TElement&) const { return "circ"; }
    std::string operator()(const StepFunction&) const { return "step"; }
    std::string operator()(const CharacterF&) const { return "charf"; }
    std::string operator()(const CharacterR&) const { return "charr"; }
    std::string operator()(const InducedF&) const { return "ind-f"; }
    std::string operator()(const InducedT&) const { return "ind-t"; }
    std::string operator()(const IntTuple&) const { return "tuple"; }
    std::string operator()(const PointSet&) const { return "set"; }
  };
  return std::visit(Visitor{}, v);
}

std::string to_text(const Value& v) {
  struct Visitor {
    std::string operator()(const Rational& r) const { return rational_to_string(r); }
    std::string operator()(const Coeff& c) const { return coeff_to_text(c); }
    std::string operator()(const FElement& g) const { return f_element_to_text(g); }
    std::string operator()(const TElement& t) const { return t_element_to_text(t); }
    std::string operator()(const StepFunction& f) const { return step_to_text(f); }
    std::string operator()(const CharacterF& chi) const { return charf_to_text(chi); }
    std::string operator()(const CharacterR& chi) const { return charr_to_text(chi); }
    std::string operator()(const InducedF& v) const {
      return induced_to_text(v, [](const Dyadic& q) { return q.str(); });
    }
    std::string operator()(const InducedT& v) const {
      return induced_to_text(v, [](const TElement& t) { return t_element_to_text(t); });
    }
    std::string operator()(const IntTuple& t) const {
      std::ostringstream os;
      os << "(";
      for (std::size_t i = 0; i < t.items.size(); ++i) {
        if (i) os << ", ";
        os << t.items[i];
      }
      os << ")";
      return os.str();
    }
    std::string operator()(const PointSet& s) const {
      std::ostringstream os;
      os << "{";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) os << ", ";
        os << s.points[i].str();
      }
      os << "}";
      return os.str();
    }
  };
  return std::visit(Visitor{}, v);
}

}  // namespace trep

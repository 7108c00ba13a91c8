#include "trep/stepfun.hpp"

#include <algorithm>
#include <cassert>

namespace trep {

namespace {

template <class V>
void check_pieces(const std::vector<Dyadic>& cuts, const std::vector<V>& vals) {
  if (cuts.size() < 2 || vals.size() + 1 != cuts.size())
    throw ValidationError("step function needs n+1 cuts for n pieces");
  if (!cuts.front().is_zero() || cuts.back() != Dyadic(1))
    throw ValidationError("step function cuts must run from 0 to 1");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (!(cuts[i] < cuts[i + 1]))
      throw ValidationError("step function cuts must be strictly increasing");
}

template <class V>
void canonicalize(std::vector<Dyadic>& cuts, std::vector<V>& vals) {
  std::vector<Dyadic> c{cuts.front()};
  std::vector<V> v;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (!v.empty() && v.back() == vals[j]) continue;
    if (!v.empty()) c.push_back(cuts[j]);
    v.push_back(vals[j]);
  }
  c.push_back(cuts.back());
  cuts = std::move(c);
  vals = std::move(v);
}

// Applies op to the two piece sequences over their common refinement.
template <class V, class Op>
void zip_pieces(const std::vector<Dyadic>& fc, const std::vector<V>& fv,
                const std::vector<Dyadic>& gc, const std::vector<V>& gv,
                std::vector<Dyadic>& out_cuts, std::vector<V>& out_vals, Op op) {
  out_cuts.clear();
  out_vals.clear();
  std::size_t i = 0, j = 0;
  out_cuts.push_back(Dyadic(0));
  while (i < fv.size() && j < gv.size()) {
    out_vals.push_back(op(fv[i], gv[j]));
    const Dyadic& fe = fc[i + 1];
    const Dyadic& ge = gc[j + 1];
    Dyadic end = std::min(fe, ge);
    if (fe == end) ++i;
    if (ge == end) ++j;
    out_cuts.push_back(end);
  }
}

std::vector<Dyadic> merged_cuts(const std::vector<Dyadic>& a, const std::vector<Dyadic>& b) {
  std::vector<Dyadic> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class V>
void refine_to(const std::vector<Dyadic>& cuts, const std::vector<V>& vals,
               const std::vector<Dyadic>& target, std::vector<V>& out_vals) {
  out_vals.clear();
  std::size_t i = 0;
  for (std::size_t j = 0; j + 1 < target.size(); ++j) {
    while (cuts[i + 1] <= target[j]) ++i;
    out_vals.push_back(vals[i]);
  }
}

// Converts (start, value) arcs on the circle into interval pieces; the arc
// with the largest start wraps around 0.
template <class V>
void arcs_to_pieces(std::vector<std::pair<Dyadic, V>> arcs, std::vector<Dyadic>& cuts,
                    std::vector<V>& vals) {
  if (arcs.empty()) throw ValidationError("empty arc list");
  std::sort(arcs.begin(), arcs.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
    if (!(arcs[i].first < arcs[i + 1].first))
      throw ValidationError("duplicate arc start");
  cuts.clear();
  vals.clear();
  cuts.push_back(Dyadic(0));
  if (!arcs.front().first.is_zero()) {
    vals.push_back(arcs.back().second);
    cuts.push_back(arcs.front().first);
  }
  for (std::size_t j = 0; j < arcs.size(); ++j) {
    vals.push_back(arcs[j].second);
    cuts.push_back(j + 1 < arcs.size() ? arcs[j + 1].first : Dyadic(1));
  }
}

}  // namespace

StepFunction::StepFunction() {
  cuts_ = {Dyadic(0), Dyadic(1)};
  values_ = {Coeff()};
}

StepFunction StepFunction::constant(Coeff v) {
  StepFunction f;
  f.values_ = {std::move(v)};
  return f;
}

StepFunction StepFunction::indicator(const Dyadic& a, const Dyadic& b) {
  if (!(Dyadic(0) <= a && a < b && b <= Dyadic(1)))
    throw ValidationError("indicator requires 0 <= a < b <= 1");
  std::vector<Dyadic> cuts{Dyadic(0)};
  std::vector<Coeff> vals;
  if (!a.is_zero()) {
    vals.push_back(Coeff());
    cuts.push_back(a);
  }
  vals.push_back(Coeff(Rational(1)));
  if (b != Dyadic(1)) {
    cuts.push_back(b);
    vals.push_back(Coeff());
  }
  cuts.push_back(Dyadic(1));
  return from_pieces(std::move(cuts), std::move(vals));
}

StepFunction StepFunction::from_pieces(std::vector<Dyadic> cuts, std::vector<Coeff> values) {
  check_pieces(cuts, values);
  canonicalize(cuts, values);
  StepFunction f;
  f.cuts_ = std::move(cuts);
  f.values_ = std::move(values);
  return f;
}

StepFunction StepFunction::from_circle_arcs(std::vector<std::pair<Dyadic, Coeff>> arcs) {
  std::vector<Dyadic> cuts;
  std::vector<Coeff> vals;
  arcs_to_pieces(std::move(arcs), cuts, vals);
  return from_pieces(std::move(cuts), std::move(vals));
}

Coeff StepFunction::value_at(const Dyadic& x) const {
  if (x < Dyadic(0) || x >= Dyadic(1))
    throw ValidationError("step function argument " + x.str() + " outside [0,1)");
  std::size_t i = 0;
  while (cuts_[i + 1] <= x) ++i;
  return values_[i];
}

std::optional<std::pair<Dyadic, Dyadic>> StepFunction::support() const {
  std::optional<Dyadic> lo, hi;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (values_[j].is_zero()) continue;
    if (!lo) lo = cuts_[j];
    hi = cuts_[j + 1];
  }
  if (!lo) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

Refinement refine(const StepFunction& f, const StepFunction& g) {
  Refinement r;
  r.cuts = merged_cuts(f.cuts(), g.cuts());
  refine_to(f.cuts(), f.values(), r.cuts, r.left);
  refine_to(g.cuts(), g.values(), r.cuts, r.right);
  return r;
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
  std::vector<Dyadic> cuts;
  std::vector<Coeff> vals;
  zip_pieces(f.cuts(), f.values(), g.cuts(), g.values(), cuts, vals,
             [](const Coeff& a, const Coeff& b) { return a + b; });
  return StepFunction::from_pieces(std::move(cuts), std::move(vals));
}

StepFunction sub(const StepFunction& f, const StepFunction& g) {
  return add(f, scale(Coeff(Rational(-1)), g));
}

StepFunction scale(const Coeff& c, const StepFunction& f) {
  std::vector<Coeff> vals;
  vals.reserve(f.values().size());
  for (const auto& v : f.values()) vals.push_back(c * v);
  return StepFunction::from_pieces(f.cuts(), std::move(vals));
}

StepFunction pointwise_mul(const StepFunction& f, const StepFunction& g) {
  std::vector<Dyadic> cuts;
  std::vector<Coeff> vals;
  zip_pieces(f.cuts(), f.values(), g.cuts(), g.values(), cuts, vals,
             [](const Coeff& a, const Coeff& b) { return a * b; });
  return StepFunction::from_pieces(std::move(cuts), std::move(vals));
}

StepFunction project(const StepFunction& f, const Dyadic& a, const Dyadic& b) {
  if (!(Dyadic(0) <= a && a < b && b <= Dyadic(1)))
    throw ValidationError("projection requires 0 <= a < b <= 1");
  std::vector<Dyadic> cuts = merged_cuts(f.cuts(), {a, b});
  std::vector<Coeff> vals;
  refine_to(f.cuts(), f.values(), cuts, vals);
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
    if (cuts[j] < a || cuts[j + 1] > b) vals[j] = Coeff();
  return StepFunction::from_pieces(std::move(cuts), std::move(vals));
}

Coeff inner_product(const StepFunction& f, const StepFunction& g) {
  std::vector<Dyadic> cuts;
  std::vector<Coeff> prods;
  zip_pieces(f.cuts(), f.values(), g.cuts(), g.values(), cuts, prods,
             [](const Coeff& a, const Coeff& b) { return a * b.conj(); });
  Coeff acc;
  for (std::size_t j = 0; j < prods.size(); ++j)
    acc = acc + Coeff((cuts[j + 1] - cuts[j]).to_rational()) * prods[j];
  return acc;
}

Coeff norm_sq(const StepFunction& f) { return inner_product(f, f); }

StepFunction compose_with_inverse(const StepFunction& f, const FElement& g) {
  std::vector<Dyadic> cuts;
  cuts.reserve(f.cuts().size());
  for (const auto& t : f.cuts()) cuts.push_back(g.evaluate(t));
  return StepFunction::from_pieces(std::move(cuts), f.values());
}

StepFunction compose_with_inverse(const StepFunction& f, const TElement& t) {
  std::vector<std::pair<Dyadic, Coeff>> arcs;
  arcs.reserve(f.piece_count());
  for (std::size_t j = 0; j < f.piece_count(); ++j)
    arcs.emplace_back(t.evaluate(f.cuts()[j]), f.values()[j]);
  return StepFunction::from_circle_arcs(std::move(arcs));
}

// ---------------------------------------------------------------------------
// ExpStep

ExpStep::ExpStep() {
  cuts_ = {Dyadic(0), Dyadic(1)};
  exponents_ = {0};
}

ExpStep ExpStep::from_pieces(std::vector<Dyadic> cuts, std::vector<int> exponents) {
  check_pieces(cuts, exponents);
  canonicalize(cuts, exponents);
  ExpStep e;
  e.cuts_ = std::move(cuts);
  e.exponents_ = std::move(exponents);
  return e;
}

ExpStep ExpStep::from_circle_arcs(std::vector<std::pair<Dyadic, int>> arcs) {
  std::vector<Dyadic> cuts;
  std::vector<int> vals;
  arcs_to_pieces(std::move(arcs), cuts, vals);
  return from_pieces(std::move(cuts), std::move(vals));
}

Rational ExpStep::integral() const {
  Rational acc(0);
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    Rational len = (cuts_[j + 1] - cuts_[j]).to_rational();
    int m = exponents_[j];
    Rational p = m >= 0 ? Rational(Integer(1) << m) : Rational(1, Integer(1) << (-m));
    acc += len * p;
  }
  return acc;
}

StepFunction ExpStep::to_pow_step() const {
  std::vector<Coeff> vals;
  vals.reserve(exponents_.size());
  for (int m : exponents_) vals.push_back(Coeff(GaussSqrt2::pow2_half(2 * m)));
  return StepFunction::from_pieces(cuts_, std::move(vals));
}

StepFunction ExpStep::to_sqrt_step() const {
  std::vector<Coeff> vals;
  vals.reserve(exponents_.size());
  for (int m : exponents_) vals.push_back(Coeff(GaussSqrt2::pow2_half(m)));
  return StepFunction::from_pieces(cuts_, std::move(vals));
}

StepFunction ExpStep::to_rep_step() const {
  std::vector<Coeff> vals;
  vals.reserve(exponents_.size());
  for (int m : exponents_) vals.push_back(rep_scalar(m));
  return StepFunction::from_pieces(cuts_, std::move(vals));
}

ExpStep ExpStep::compose_with_inverse(const FElement& g) const {
  std::vector<Dyadic> cuts;
  cuts.reserve(cuts_.size());
  for (const auto& t : cuts_) cuts.push_back(g.evaluate(t));
  return from_pieces(std::move(cuts), exponents_);
}

ExpStep ExpStep::compose_with_inverse(const TElement& t) const {
  std::vector<std::pair<Dyadic, int>> arcs;
  arcs.reserve(exponents_.size());
  for (std::size_t j = 0; j < exponents_.size(); ++j)
    arcs.emplace_back(t.evaluate(cuts_[j]), exponents_[j]);
  return from_circle_arcs(std::move(arcs));
}

ExpStep operator+(const ExpStep& a, const ExpStep& b) {
  std::vector<Dyadic> cuts;
  std::vector<int> vals;
  zip_pieces(a.cuts_, a.exponents_, b.cuts_, b.exponents_, cuts, vals,
             [](int x, int y) { return x + y; });
  return ExpStep::from_pieces(std::move(cuts), std::move(vals));
}

}  // namespace trep

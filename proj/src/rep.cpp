#include "trep/rep.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace trep {

ExpStep rn_derivative(const FElement& g) {
  const BreakList& br = g.breaks();
  std::vector<Dyadic> cuts;
  std::vector<int> exps;
  cuts.reserve(br.size());
  exps.reserve(br.size() - 1);
  for (const auto& [x, y] : br) cuts.push_back(y);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    Dyadic dx = br[i + 1].first - br[i].first;
    Dyadic dy = br[i + 1].second - br[i].second;
    exps.push_back(-*ratio_pow2_exponent(dx, dy));
  }
  return ExpStep::from_pieces(std::move(cuts), std::move(exps));
}

ExpStep rn_derivative(const TElement& t) {
  const BreakList& lift = t.lift();
  std::vector<std::pair<Dyadic, int>> arcs;
  arcs.reserve(lift.size() - 1);
  for (std::size_t i = 0; i + 1 < lift.size(); ++i) {
    Dyadic dx = lift[i + 1].first - lift[i].first;
    Dyadic dy = lift[i + 1].second - lift[i].second;
    arcs.emplace_back(lift[i].second.frac(), -*ratio_pow2_exponent(dx, dy));
  }
  return ExpStep::from_circle_arcs(std::move(arcs));
}

StepFunction apply_pi(const FElement& g, const StepFunction& f) {
  return pointwise_mul(rn_derivative(g).to_rep_step(), compose_with_inverse(f, g));
}

StepFunction apply_rho(const TElement& t, const StepFunction& f) {
  return pointwise_mul(rn_derivative(t).to_rep_step(), compose_with_inverse(f, t));
}

Coeff matrix_coefficient(const FElement& g, const StepFunction& f, const StepFunction& h) {
  return inner_product(apply_pi(g, f), h);
}

std::optional<long long> equivalence_k(double s, double t, double tol) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
  double x = (s - t) * std::log(2.0) / (2.0 * std::acos(-1.0));
  long long k = std::llround(x);
  if (std::fabs(x - static_cast<double>(k)) < tol) return k;
  return std::nullopt;
}

std::optional<FElement> probe_nontrivial_action(const StepFunction& f, const Dyadic& a,
                                                const Dyadic& b) {
  if (!(Dyadic(0) <= a && a < b && b <= Dyadic(1)))
    throw ValidationError("probe interval must satisfy 0 <= a < b <= 1");
  StepFunction pf = project(f, a, b);
  if (pf.is_zero()) return std::nullopt;

  // A piece of f inside [a,b) with a nonzero value, pulled strictly inside.
  auto sup = pf.support();
  Dyadic u = sup->first;
  Dyadic v = u;
  for (std::size_t j = 0; j + 1 < pf.cuts().size(); ++j) {
    if (pf.cuts()[j] == u && !pf.values()[j].is_zero()) {
      v = pf.cuts()[j + 1];
      break;
    }
  }
  Dyadic margin = (v - u).mul_pow2(-2);
  Dyadic c = u + margin;
  Dyadic d = v - margin;

  for (int n = 1; n <= 8; ++n) {
    std::vector<Dyadic> xs{Dyadic(0)};
    std::vector<Dyadic> ys{Dyadic(0)};
    if (!a.is_zero()) {
      xs.push_back(a);
      ys.push_back(a);
    }
    xs.push_back(c);
    ys.push_back(c);
    xs.push_back(d);
    ys.push_back(c + (d - c).mul_pow2(-n));
    if (b != Dyadic(1)) {
      xs.push_back(b);
      ys.push_back(b);
    }
    xs.push_back(Dyadic(1));
    ys.push_back(Dyadic(1));
    FElement gn = from_partitions(xs, ys);
    if (apply_pi(gn.inverse(), f) != f) {
      if (!gn.supported_in(a, b))
        throw std::logic_error("contraction witness escaped its interval");
      return gn;
    }
  }
  throw std::logic_error("no contraction witness found for a nonvanishing function");
}

std::optional<TranslationWitness> constancy_witness(const StepFunction& f) {
  if (f.is_constant()) return std::nullopt;
  // Straddle the first value change: [a,b] sits left of the cut, the shifted
  // copy [a+h, b+h] strictly inside the piece to its right.
  Dyadic t1 = f.cuts()[1];
  Dyadic len0 = t1 - f.cuts()[0];
  Dyadic len1 = f.cuts()[2] - t1;
  Dyadic w = std::min(len0, len1).mul_pow2(-2);
  TranslationWitness out{t1 - w - w, t1 - w, w + w + w};
  if (compose_with_inverse(f, gamma_translation(out.a, out.b, out.h)) == f)
    throw std::logic_error("translation witness failed to move the function");
  return out;
}

bool invariance_check(const FElement& g, const Dyadic& p, const StepFunction& f) {
  if (!g.fixes(p)) throw ValidationError("element does not fix " + p.str());
  auto inside = [](const StepFunction& s, const Dyadic& lo, const Dyadic& hi) {
    auto sup = s.support();
    if (!sup) return true;
    return lo <= sup->first && sup->second <= hi;
  };
  StepFunction left = apply_pi(g, project(f, Dyadic(0), p));
  StepFunction right = apply_pi(g, project(f, p, Dyadic(1)));
  return inside(left, Dyadic(0), p) && inside(right, p, Dyadic(1));
}

CharacterF CharacterF::make(const Dyadic& p, std::array<Rational, 4> angles) {
  if (!(Dyadic(0) < p && p < Dyadic(1)))
    throw ValidationError("character base point must lie in (0,1)");
  for (auto& a : angles) a = frac_mod1(a);
  return CharacterF{p, std::move(angles)};
}

Rational eval_character(const CharacterF& chi, const FElement& g) {
  auto k = g.log_slope_quadruple(chi.p);
  Rational acc(0);
  for (std::size_t j = 0; j < 4; ++j) acc += chi.angles[j] * k[j];
  return frac_mod1(acc);
}

Rational eval_character(const CharacterR& chi, const TElement& rot) {
  auto h = rot.rotation_angle();
  if (!h) throw ValidationError("character of the rotation group applied to a non-rotation");
  return frac_mod1(Rational(chi.c) * h->to_rational());
}

CharacterF conjugate_character(const CharacterF& chi, const FElement& g) {
  Dyadic p = g.preimage(chi.p);
  if (!(Dyadic(0) < p && p < Dyadic(1)))
    throw ValidationError("conjugated base point must lie in (0,1)");
  // Conjugation by g preserves all four one sided log slopes, so the angle
  // vector carries over unchanged to the stabilizer of the pulled back point.
  return CharacterF::make(p, chi.angles);
}

FElement section(const Dyadic& p, const Dyadic& q) {
  if (!(Dyadic(0) < p && p < Dyadic(1)) || !(Dyadic(0) < q && q < Dyadic(1)))
    throw ValidationError("section endpoints must lie in (0,1)");
  return from_partitions({Dyadic(0), p, Dyadic(1)}, {Dyadic(0), q, Dyadic(1)});
}

RootSum RootSum::term(const Rational& amplitude, const Rational& angle) {
  RootSum s;
  if (amplitude == 0) return s;
  Rational amp = amplitude;
  Rational ang = frac_mod1(angle);
  if (amp < 0) {
    amp = -amp;
    ang = frac_mod1(ang + Rational(1, 2));
  }
  s.terms_.emplace_back(std::move(amp), std::move(ang));
  return s;
}

bool RootSum::is_single_unit() const {
  return terms_.size() == 1 && terms_.front().first == 1;
}

RootSum RootSum::rotated(const Rational& angle) const {
  RootSum out;
  for (const auto& [amp, ang] : terms_) out = out + term(amp, ang + angle);
  return out;
}

RootSum operator+(const RootSum& x, const RootSum& y) {
  // Both inputs are canonical, so every amplitude is positive and merging
  // same-angle terms can never cancel.
  std::map<Rational, Rational> merged;  // angle -> amplitude
  for (const auto& [amp, ang] : x.terms_) merged[ang] += amp;
  for (const auto& [amp, ang] : y.terms_) merged[ang] += amp;
  RootSum out;
  for (const auto& [ang, amp] : merged) out.terms_.emplace_back(amp, ang);
  return out;
}

InducedF induced_apply_f(const CharacterF& chi, const FElement& g, const InducedF& v) {
  InducedF out;
  for (const auto& [q, sum] : v.terms()) {
    if (!(Dyadic(0) < q && q < Dyadic(1)))
      throw ValidationError("induced vector support point " + q.str() + " outside (0,1)");
    Dyadic gq = g.evaluate(q);
    FElement cocycle = compose(section(chi.p, gq).inverse(), compose(g, section(chi.p, q)));
    Rational angle = eval_character(chi, cocycle);
    out.add(gq, sum.rotated(angle));
  }
  return out;
}

InducedT induced_apply_t(const CharacterR& chi, const TElement& g, const InducedT& v) {
  InducedT out;
  for (const auto& [x, sum] : v.terms()) {
    TElement y = compose(g, x);
    auto [rep, h] = y.coset_repr();
    TElement cocycle = compose(rep.inverse(), y);
    if (!cocycle.is_rotation())
      throw std::logic_error("coset cocycle is not a rotation");
    Rational angle = eval_character(chi, cocycle);
    out.add(rep, sum.rotated(angle));
  }
  return out;
}

std::vector<Dyadic> orbit_witness(const Dyadic& p, const Dyadic& q, int count) {
  if (!(Dyadic(0) < p && p < Dyadic(1)))
    throw ValidationError("orbit base point p must lie in (0,1)");
  if (!(Dyadic(0) < q && q < Dyadic(1)) || q == p)
    throw ValidationError("orbit seed q must lie in (0,1) and differ from p");
  if (count < 1 || count > 4096) throw ValidationError("orbit size must be between 1 and 4096");

  // A contraction fixing p that moves q toward 0 (resp. toward p) forever.
  FElement delta =
      q < p ? from_partitions({Dyadic(0), q, p, Dyadic(1)},
                              {Dyadic(0), q.half(), p, Dyadic(1)})
            : from_partitions({Dyadic(0), p, q, Dyadic(1)},
                              {Dyadic(0), p, midpoint(p, q), Dyadic(1)});
  std::vector<Dyadic> out;
  out.reserve(count);
  Dyadic x = q;
  for (int i = 0; i < count; ++i) {
    out.push_back(x);
    x = delta.evaluate(x);
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i) assert(out[i + 1] < out[i]);
  return out;
}

std::optional<std::vector<StepFunction>> rho0_one_orbit(const TElement& t, int count) {
  if (count < 1 || count > 4096) throw ValidationError("orbit size must be between 1 and 4096");
  if (t.is_rotation()) return std::nullopt;
  StepFunction f = rn_derivative(t).to_sqrt_step();

  // Jump positions of f as a circle function.
  std::vector<Dyadic> jumps;
  for (std::size_t j = 1; j + 1 < f.cuts().size(); ++j) jumps.push_back(f.cuts()[j]);
  if (f.values().front() != f.values().back()) jumps.insert(jumps.begin(), Dyadic(0));
  assert(!jumps.empty());

  Dyadic gap = Dyadic(1);
  if (jumps.size() > 1) {
    for (std::size_t j = 0; j + 1 < jumps.size(); ++j)
      gap = std::min(gap, jumps[j + 1] - jumps[j]);
    gap = std::min(gap, Dyadic(1) - jumps.back() + jumps.front());
  }
  // Rotation angles spaced closely enough that no two rotates can share a
  // jump set.
  Dyadic step(1);
  while (!(step * Dyadic(count) < gap)) step = step.half();

  std::vector<StepFunction> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(apply_rho(TElement::rotation(step * Dyadic(i)), f));
  return out;
}

StepFunction restriction_transport(const StepFunction& f) { return f; }

}  // namespace trep

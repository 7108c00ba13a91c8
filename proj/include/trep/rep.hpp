#pragma once

#include <map>
#include <optional>
#include <vector>

#include "trep/stepfun.hpp"

namespace trep {

// Density of the pushforward of Lebesgue measure: the value at x is 2^(-k)
// where 2^k is the slope at the preimage of x. Integrates to exactly 1.
ExpStep rn_derivative(const FElement& g);
ExpStep rn_derivative(const TElement& t);

// The unitary action on the exact dense subspace: the density raised to the
// formal power 1/2 + i s times the composition with the inverse.
StepFunction apply_pi(const FElement& g, const StepFunction& f);
StepFunction apply_rho(const TElement& t, const StepFunction& f);

Coeff matrix_coefficient(const FElement& g, const StepFunction& f, const StepFunction& h);

// The representation parameters s and t give the same representation exactly
// when (s - t) * ln2 / (2 pi) is an integer; returns that integer when it is
// within tol of one.
std::optional<long long> equivalence_k(double s, double t, double tol = 1e-9);

// Witness that the action on [a,b] is nontrivial on f: an element supported
// in [a,b] that moves f, or nullopt when f vanishes on [a,b).
std::optional<FElement> probe_nontrivial_action(const StepFunction& f, const Dyadic& a,
                                                const Dyadic& b);

struct TranslationWitness {
  Dyadic a, b, h;
};
// Witness that f is not constant: an interval [a,b] and a shift h with
// f(x) != f(x+h) on it, exhibited through the translating element. Returns
// nullopt when f is constant.
std::optional<TranslationWitness> constancy_witness(const StepFunction& f);

// For g fixing p: the action maps functions supported in [0,p] (resp. [p,1])
// to functions supported there again.
bool invariance_check(const FElement& g, const Dyadic& p, const StepFunction& f);

/// Unitary character of the stabilizer of a dyadic p, factoring through the
/// four one sided log slopes at 0, p and 1. The value on g is
/// exp(2 pi i * sum_j angles[j] * k_j).
struct CharacterF {
  Dyadic p;
  std::array<Rational, 4> angles;  // each in [0,1)

  static CharacterF make(const Dyadic& p, std::array<Rational, 4> angles);
  friend bool operator==(const CharacterF&, const CharacterF&) = default;
};

/// Character of the rotation subgroup: rotation(h) -> exp(2 pi i * c * h).
struct CharacterR {
  long long c = 0;
  friend bool operator==(const CharacterR&, const CharacterR&) = default;
};

// Angle in [0,1): the character value is exp(2 pi i * angle).
Rational eval_character(const CharacterF& chi, const FElement& g);
Rational eval_character(const CharacterR& chi, const TElement& rot);

// The character x -> chi(g x g^-1) of the stabilizer of g^-1(chi.p).
CharacterF conjugate_character(const CharacterF& chi, const FElement& g);

// Canonical element mapping p to q, from the partitions [0,p,1] -> [0,q,1].
FElement section(const Dyadic& p, const Dyadic& q);

/// Formal sum of roots of unity with rational amplitudes. Canonical form:
/// positive amplitudes, angles distinct in [0,1), sorted; a sign flip is
/// absorbed as a half turn.
class RootSum {
 public:
  RootSum() = default;
  static RootSum unit(const Rational& angle) { return term(Rational(1), angle); }
  static RootSum term(const Rational& amplitude, const Rational& angle);

  const std::vector<std::pair<Rational, Rational>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_single_unit() const;
  RootSum rotated(const Rational& angle) const;
  friend RootSum operator+(const RootSum& x, const RootSum& y);
  friend bool operator==(const RootSum&, const RootSum&) = default;

 private:
  std::vector<std::pair<Rational, Rational>> terms_;  // (amplitude, angle)
};

/// Finitely supported vector over orbit labels with RootSum amplitudes.
template <class Label>
class Induced {
 public:
  Induced() = default;
  static Induced basis(const Label& q) {
    Induced v;
    v.add(q, RootSum::unit(Rational(0)));
    return v;
  }
  void add(const Label& q, const RootSum& s) {
    if (s.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(q, s);
    if (!fresh) {
      it->second = it->second + s;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  const std::map<Label, RootSum>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const Induced&, const Induced&) = default;

 private:
  std::map<Label, RootSum> terms_;
};

using InducedF = Induced<Dyadic>;
using InducedT = Induced<TElement>;

// Induced action twisted by chi: a basis vector at q maps to the basis vector
// at g(q) rotated by chi evaluated on the section cocycle.
InducedF induced_apply_f(const CharacterF& chi, const FElement& g, const InducedF& v);
// Same over rotation cosets, labeled by their unique representative fixing 0.
InducedT induced_apply_t(const CharacterR& chi, const TElement& g, const InducedT& v);

// count distinct points of the orbit of q under the stabilizer of p,
// starting at q and iterating a contraction that fixes p.
std::vector<Dyadic> orbit_witness(const Dyadic& p, const Dyadic& q, int count);

// count distinct rotates of the square root density of t, or nullopt when t
// is a rotation (whose density is constant).
std::optional<std::vector<StepFunction>> rho0_one_orbit(const TElement& t, int count);

// The identification of interval and circle square integrable functions; the
// interval action of g agrees with the circle action of its embedding.
StepFunction restriction_transport(const StepFunction& f);

}  // namespace trep

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "trep/dyadic.hpp"

namespace trep {

enum class Side { left, right };

using BreakList = std::vector<std::pair<Dyadic, Dyadic>>;

/// Orientation preserving piecewise linear homeomorphism of [0,1] with dyadic
/// breakpoints and power of two slopes, stored as its canonical breakpoint
/// list (adjacent segments always have distinct slopes).
class FElement {
 public:
  FElement();  // identity

  static FElement identity() { return FElement(); }
  // Validates endpoints, monotonicity and slopes, then canonicalizes.
  static FElement from_breaks(BreakList breaks);

  const BreakList& breaks() const { return breaks_; }
  bool is_identity() const;

  Dyadic evaluate(const Dyadic& x) const;
  Dyadic preimage(const Dyadic& y) const;
  FElement inverse() const;
  int slope_exponent(const Dyadic& x, Side side) const;
  bool fixes(const Dyadic& p) const;
  bool supported_in(const Dyadic& a, const Dyadic& b) const;
  // (log2 g'(0+), log2 g'(p-), log2 g'(p+), log2 g'(1-)) for g fixing p.
  std::array<int, 4> log_slope_quadruple(const Dyadic& p) const;

  friend FElement compose(const FElement& g, const FElement& h);  // g after h

  friend bool operator==(const FElement& a, const FElement& b) {
    return a.breaks_ == b.breaks_;
  }
  friend bool operator!=(const FElement& a, const FElement& b) { return !(a == b); }

 private:
  BreakList breaks_;
  // Canonicalizes without revalidating; for internally produced break lists.
  static FElement trusted(BreakList breaks);
};

// The element mapping the partition xs onto ys. Segments of equal length are
// matched by a single slope-one piece; others through power sum
// decompositions of both lengths with terms matched largest to largest.
// When fixed_segment is given (0-based, covering [xs[i], xs[i+1]]), that
// segment must have equal endpoints in xs and ys and the result is the
// identity on it.
FElement from_partitions(const std::vector<Dyadic>& xs, const std::vector<Dyadic>& ys,
                         std::optional<std::size_t> fixed_segment = std::nullopt);

// The element translating [a,b] by h, built from the partitions
// [0,a,b,1] -> [0,a+h,b+h,1].
FElement gamma_translation(const Dyadic& a, const Dyadic& b, const Dyadic& h);

using Rng = std::mt19937_64;

// Two strictly increasing dyadic partitions of [0,1] of equal length with
// denominators at most 2^max_depth.
std::pair<std::vector<Dyadic>, std::vector<Dyadic>> random_partition_pair(int max_depth,
                                                                          Rng& rng);
FElement random_element(int max_depth, Rng& rng);
FElement random_element(int max_depth, std::uint64_t seed);

/// Degree one circle homeomorphism with dyadic data, stored as its anchored
/// lift: pairs (x, w) with x running from 0 to 1, w strictly increasing,
/// w(1) = w(0) + 1 and w(0) in [0,1).
class TElement {
 public:
  TElement();  // identity

  static TElement identity() { return TElement(); }
  static TElement rotation(const Dyadic& h);
  static TElement embed(const FElement& f);
  // Pairs (x_i, y_i) with x_0 = 0, x strictly increasing in [0,1), y in [0,1)
  // read mod 1; the lift is reconstructed and validated.
  static TElement from_circle_breaks(const BreakList& pairs);

  const BreakList& lift() const { return lift_; }
  // Display form: (x_i, w_i mod 1) without the final x = 1 anchor.
  BreakList circle_breaks() const;

  Dyadic evaluate(const Dyadic& x) const;  // mod 1
  Dyadic preimage(const Dyadic& y) const;  // mod 1
  Dyadic lift_evaluate(const Dyadic& x) const;  // x in [0,1]
  TElement inverse() const;
  bool is_identity() const;
  bool is_rotation() const;
  std::optional<Dyadic> rotation_angle() const;
  int slope_exponent(const Dyadic& x, Side side) const;
  bool fixes(const Dyadic& p) const;
  // The unique pair (f, h) with f fixing the point 0, t = f * rotation(h).
  std::pair<TElement, Dyadic> coset_repr() const;

  friend TElement compose(const TElement& s, const TElement& t);  // s after t

  friend bool operator==(const TElement& a, const TElement& b) { return a.lift_ == b.lift_; }
  friend bool operator!=(const TElement& a, const TElement& b) { return !(a == b); }
  bool operator<(const TElement& other) const;  // lexicographic on the lift

 private:
  BreakList lift_;
  static TElement trusted(BreakList lift);
};

}  // namespace trep

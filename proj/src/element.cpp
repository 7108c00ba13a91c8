#include "trep/element.hpp"

#include <algorithm>
#include <cassert>

namespace trep {

namespace {

// Slope exponents per segment; throws when a slope is not a power of two.
std::vector<int> segment_exponents(const BreakList& breaks) {
  std::vector<int> exps;
  exps.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Dyadic dx = breaks[i + 1].first - breaks[i].first;
    Dyadic dy = breaks[i + 1].second - breaks[i].second;
    auto k = ratio_pow2_exponent(dx, dy);
    if (!k)
      throw ValidationError("slope between " + breaks[i].first.str() + " and " +
                            breaks[i + 1].first.str() + " is not a power of 2");
    exps.push_back(*k);
  }
  return exps;
}

// Removes interior breakpoints where adjacent slopes agree. keep_front_anchor
// preserves index 0 even when it is not a genuine breakpoint (circle lifts).
BreakList merge_collinear(BreakList breaks) {
  if (breaks.size() <= 2) return breaks;
  std::vector<int> exps = segment_exponents(breaks);
  BreakList out;
  out.reserve(breaks.size());
  out.push_back(breaks.front());
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    if (exps[i - 1] != exps[i]) out.push_back(breaks[i]);
  }
  out.push_back(breaks.back());
  return out;
}

// Index i of the segment [pts[i], pts[i+1]] used to evaluate at x.
std::size_t segment_index(const BreakList& breaks, const Dyadic& x, bool by_second) {
  std::size_t lo = 0, hi = breaks.size() - 1;
  // last index with coordinate <= x
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    const Dyadic& c = by_second ? breaks[mid].second : breaks[mid].first;
    if (c <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Dyadic eval_pl(const BreakList& breaks, const Dyadic& x, bool inverse_direction) {
  std::size_t i = segment_index(breaks, x, inverse_direction);
  Dyadic dx = breaks[i + 1].first - breaks[i].first;
  Dyadic dy = breaks[i + 1].second - breaks[i].second;
  if (!inverse_direction) {
    int k = *ratio_pow2_exponent(dx, dy);
    return breaks[i].second + (x - breaks[i].first).mul_pow2(k);
  }
  int k = *ratio_pow2_exponent(dy, dx);
  return breaks[i].first + (x - breaks[i].second).mul_pow2(k);
}

}  // namespace

FElement::FElement() {
  breaks_.emplace_back(Dyadic(0), Dyadic(0));
  breaks_.emplace_back(Dyadic(1), Dyadic(1));
}

FElement FElement::trusted(BreakList breaks) {
  FElement g;
  g.breaks_ = merge_collinear(std::move(breaks));
  return g;
}

FElement FElement::from_breaks(BreakList breaks) {
  if (breaks.size() < 2) throw ValidationError("an element needs at least two breakpoints");
  if (!breaks.front().first.is_zero() || !breaks.front().second.is_zero())
    throw ValidationError("first breakpoint must be (0,0)");
  if (breaks.back().first != Dyadic(1) || breaks.back().second != Dyadic(1))
    throw ValidationError("last breakpoint must be (1,1)");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i].first < breaks[i + 1].first))
      throw ValidationError("breakpoints must be strictly increasing");
    if (!(breaks[i].second < breaks[i + 1].second))
      throw ValidationError("breakpoint images must be strictly increasing");
  }
  segment_exponents(breaks);  // validates slopes
  return trusted(std::move(breaks));
}

bool FElement::is_identity() const { return breaks_.size() == 2; }

Dyadic FElement::evaluate(const Dyadic& x) const {
  if (x < Dyadic(0) || x > Dyadic(1))
    throw ValidationError("point " + x.str() + " outside [0,1]");
  return eval_pl(breaks_, x, false);
}

Dyadic FElement::preimage(const Dyadic& y) const {
  if (y < Dyadic(0) || y > Dyadic(1))
    throw ValidationError("point " + y.str() + " outside [0,1]");
  return eval_pl(breaks_, y, true);
}

FElement FElement::inverse() const {
  BreakList swapped;
  swapped.reserve(breaks_.size());
  for (const auto& [x, y] : breaks_) swapped.emplace_back(y, x);
  return trusted(std::move(swapped));
}

int FElement::slope_exponent(const Dyadic& x, Side side) const {
  if (x < Dyadic(0) || x > Dyadic(1))
    throw ValidationError("point " + x.str() + " outside [0,1]");
  std::size_t i;
  if (side == Side::right) {
    if (x == Dyadic(1)) throw ValidationError("no right derivative at 1");
    i = segment_index(breaks_, x, false);
  } else {
    if (x.is_zero()) throw ValidationError("no left derivative at 0");
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x,
                               [](const auto& br, const Dyadic& v) { return br.first < v; });
    i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    i = std::min(i, breaks_.size() - 2);
  }
  Dyadic dx = breaks_[i + 1].first - breaks_[i].first;
  Dyadic dy = breaks_[i + 1].second - breaks_[i].second;
  return *ratio_pow2_exponent(dx, dy);
}

bool FElement::fixes(const Dyadic& p) const {
  if (!(Dyadic(0) < p && p < Dyadic(1)))
    throw ValidationError("fixed point queries require p in (0,1)");
  return evaluate(p) == p;
}

bool FElement::supported_in(const Dyadic& a, const Dyadic& b) const {
  if (!(Dyadic(0) <= a && a < b && b <= Dyadic(1)))
    throw ValidationError("supported_in requires 0 <= a < b <= 1");
  if (evaluate(a) != a || evaluate(b) != b) return false;
  for (const auto& [x, y] : breaks_) {
    if (x < a && x != y) return false;
    if (x > b && x != y) return false;
  }
  return true;
}

std::array<int, 4> FElement::log_slope_quadruple(const Dyadic& p) const {
  if (!(Dyadic(0) < p && p < Dyadic(1)))
    throw ValidationError("log slope quadruple requires p in (0,1)");
  if (!fixes(p)) throw ValidationError("element does not fix " + p.str());
  return {slope_exponent(Dyadic(0), Side::right), slope_exponent(p, Side::left),
          slope_exponent(p, Side::right), slope_exponent(Dyadic(1), Side::left)};
}

FElement compose(const FElement& g, const FElement& h) {
  std::vector<Dyadic> xs;
  xs.reserve(g.breaks_.size() + h.breaks_.size());
  for (const auto& [x, y] : h.breaks_) xs.push_back(x);
  for (const auto& [x, y] : g.breaks_) xs.push_back(h.preimage(x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  BreakList out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.emplace_back(x, g.evaluate(h.evaluate(x)));
  return FElement::trusted(std::move(out));
}

FElement from_partitions(const std::vector<Dyadic>& xs, const std::vector<Dyadic>& ys,
                         std::optional<std::size_t> fixed_segment) {
  if (xs.size() != ys.size()) throw ValidationError("partitions must have equal length");
  if (xs.size() < 2) throw ValidationError("partitions need at least the endpoints 0 and 1");
  auto check = [](const std::vector<Dyadic>& pts, const char* which) {
    if (!pts.front().is_zero() || pts.back() != Dyadic(1))
      throw ValidationError(std::string(which) + " partition must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (!(pts[i] < pts[i + 1]))
        throw ValidationError(std::string(which) + " partition must be strictly increasing");
  };
  check(xs, "source");
  check(ys, "target");
  if (fixed_segment) {
    std::size_t i = *fixed_segment;
    if (i + 1 >= xs.size()) throw ValidationError("fixed segment index out of range");
    if (xs[i] != ys[i] || xs[i + 1] != ys[i + 1])
      throw ValidationError("fixed segment endpoints must agree in both partitions");
  }

  BreakList out;
  out.emplace_back(Dyadic(0), Dyadic(0));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Dyadic dx = xs[i + 1] - xs[i];
    Dyadic dy = ys[i + 1] - ys[i];
    if (dx == dy) {
      out.emplace_back(xs[i + 1], ys[i + 1]);
      continue;
    }
    int k = std::max(dx.popcount(), dy.popcount());
    std::vector<int> ax = decompose_power_sum(dx, k);
    std::vector<int> ay = decompose_power_sum(dy, k);
    Dyadic cx = xs[i];
    Dyadic cy = ys[i];
    for (int j = 0; j < k; ++j) {
      cx = cx + Dyadic(1).mul_pow2(ax[j]);
      cy = cy + Dyadic(1).mul_pow2(ay[j]);
      out.emplace_back(cx, cy);
    }
    assert(out.back().first == xs[i + 1] && out.back().second == ys[i + 1]);
  }
  return FElement::from_breaks(std::move(out));
}

FElement gamma_translation(const Dyadic& a, const Dyadic& b, const Dyadic& h) {
  if (!(Dyadic(0) < a && a < b && b < Dyadic(1)))
    throw ValidationError("translation interval must satisfy 0 < a < b < 1");
  if (h.is_zero()) throw ValidationError("translation amount h must be nonzero");
  if (!(a + h > Dyadic(0))) throw ValidationError("translated interval escapes [0,1]: a+h <= 0");
  if (!(b + h < Dyadic(1))) throw ValidationError("translated interval escapes [0,1]: b+h >= 1");
  return from_partitions({Dyadic(0), a, b, Dyadic(1)},
                         {Dyadic(0), a + h, b + h, Dyadic(1)});
}

std::pair<std::vector<Dyadic>, std::vector<Dyadic>> random_partition_pair(int max_depth,
                                                                          Rng& rng) {
  if (max_depth < 1) throw ValidationError("partition depth must be at least 1");
  std::vector<Dyadic> a{Dyadic(0), Dyadic(1)};
  std::vector<Dyadic> b{Dyadic(0), Dyadic(1)};
  auto eligible = [max_depth](const std::vector<Dyadic>& pts) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (midpoint(pts[i], pts[i + 1]).exp() <= max_depth) idx.push_back(i);
    return idx;
  };
  std::size_t splits = static_cast<std::size_t>(rng() % (2 * max_depth + 1));
  for (std::size_t s = 0; s < splits; ++s) {
    auto ia = eligible(a);
    auto ib = eligible(b);
    if (ia.empty() || ib.empty()) break;
    std::size_t pa = ia[rng() % ia.size()];
    std::size_t pb = ib[rng() % ib.size()];
    a.insert(a.begin() + pa + 1, midpoint(a[pa], a[pa + 1]));
    b.insert(b.begin() + pb + 1, midpoint(b[pb], b[pb + 1]));
  }
  return {std::move(a), std::move(b)};
}

FElement random_element(int max_depth, Rng& rng) {
  auto [xs, ys] = random_partition_pair(max_depth, rng);
  return from_partitions(xs, ys);
}

FElement random_element(int max_depth, std::uint64_t seed) {
  Rng rng(seed);
  return random_element(max_depth, rng);
}

// ---------------------------------------------------------------------------
// TElement

TElement::TElement() {
  lift_.emplace_back(Dyadic(0), Dyadic(0));
  lift_.emplace_back(Dyadic(1), Dyadic(1));
}

TElement TElement::trusted(BreakList lift) {
  TElement t;
  t.lift_ = merge_collinear(std::move(lift));
  return t;
}

TElement TElement::rotation(const Dyadic& h) {
  Dyadic c = h.frac();
  BreakList lift;
  lift.emplace_back(Dyadic(0), c);
  lift.emplace_back(Dyadic(1), c + Dyadic(1));
  return trusted(std::move(lift));
}

TElement TElement::embed(const FElement& f) {
  TElement t;
  t.lift_ = f.breaks();
  return t;
}

TElement TElement::from_circle_breaks(const BreakList& pairs) {
  if (pairs.empty()) throw ValidationError("a circle element needs at least one breakpoint");
  if (!pairs.front().first.is_zero())
    throw ValidationError("circle breakpoints must be anchored at x = 0");
  for (const auto& [x, y] : pairs) {
    if (x < Dyadic(0) || x >= Dyadic(1))
      throw ValidationError("circle breakpoint " + x.str() + " outside [0,1)");
    if (y < Dyadic(0) || y >= Dyadic(1))
      throw ValidationError("circle value " + y.str() + " outside [0,1)");
  }
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
    if (!(pairs[i].first < pairs[i + 1].first))
      throw ValidationError("circle breakpoints must be strictly increasing");

  BreakList lift;
  lift.reserve(pairs.size() + 1);
  bool wrapped = false;
  lift.emplace_back(pairs[0]);
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    Dyadic w = pairs[i].second;
    if (w <= pairs[i - 1].second || wrapped) {
      if (w <= pairs[i - 1].second && wrapped)
        throw ValidationError("circle values wrap more than once");
      if (w <= pairs[i - 1].second) wrapped = true;
      w = w + Dyadic(1);
    }
    if (!(w > lift.back().second))
      throw ValidationError("circle values must be strictly increasing mod 1");
    lift.emplace_back(pairs[i].first, w);
  }
  Dyadic top = pairs[0].second + Dyadic(1);
  if (!(top > lift.back().second))
    throw ValidationError("circle values must be strictly increasing mod 1");
  lift.emplace_back(Dyadic(1), top);
  segment_exponents(lift);  // validates slopes
  return trusted(std::move(lift));
}

BreakList TElement::circle_breaks() const {
  BreakList out;
  out.reserve(lift_.size() - 1);
  for (std::size_t i = 0; i + 1 < lift_.size(); ++i)
    out.emplace_back(lift_[i].first, lift_[i].second.frac());
  return out;
}

Dyadic TElement::lift_evaluate(const Dyadic& x) const {
  if (x < Dyadic(0) || x > Dyadic(1))
    throw ValidationError("lift argument " + x.str() + " outside [0,1]");
  return eval_pl(lift_, x, false);
}

Dyadic TElement::evaluate(const Dyadic& x) const { return lift_evaluate(x.frac()).frac(); }

Dyadic TElement::preimage(const Dyadic& y) const {
  Dyadic yr = y.frac();
  Dyadic c = lift_.front().second;
  Dyadic target = (yr >= c) ? yr : yr + Dyadic(1);
  Dyadic x = eval_pl(lift_, target, true);
  return x.frac();
}

TElement TElement::inverse() const {
  BreakList pairs;
  pairs.reserve(lift_.size());
  bool has_zero = false;
  for (std::size_t i = 0; i + 1 < lift_.size(); ++i) {
    Dyadic pos = lift_[i].second.frac();
    if (pos.is_zero()) has_zero = true;
    pairs.emplace_back(pos, lift_[i].first);
  }
  if (!has_zero) pairs.emplace_back(Dyadic(0), preimage(Dyadic(0)));
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  return from_circle_breaks(pairs);
}

bool TElement::is_identity() const {
  return lift_.size() == 2 && lift_.front().second.is_zero();
}

bool TElement::is_rotation() const { return lift_.size() == 2; }

std::optional<Dyadic> TElement::rotation_angle() const {
  if (!is_rotation()) return std::nullopt;
  return lift_.front().second;
}

int TElement::slope_exponent(const Dyadic& x, Side side) const {
  Dyadic xr = x.frac();
  std::size_t i;
  if (side == Side::right) {
    i = segment_index(lift_, xr, false);
  } else if (xr.is_zero()) {
    i = lift_.size() - 2;  // approach 0 from below: final segment
  } else {
    auto it = std::lower_bound(lift_.begin(), lift_.end(), xr,
                               [](const auto& br, const Dyadic& v) { return br.first < v; });
    i = static_cast<std::size_t>(it - lift_.begin()) - 1;
    i = std::min(i, lift_.size() - 2);
  }
  Dyadic dx = lift_[i + 1].first - lift_[i].first;
  Dyadic dy = lift_[i + 1].second - lift_[i].second;
  return *ratio_pow2_exponent(dx, dy);
}

bool TElement::fixes(const Dyadic& p) const { return evaluate(p) == p.frac(); }

std::pair<TElement, Dyadic> TElement::coset_repr() const {
  Dyadic a = preimage(Dyadic(0));
  TElement f = compose(*this, rotation(a));
  assert(f.evaluate(Dyadic(0)).is_zero());
  return {f, (-a).frac()};
}

TElement compose(const TElement& s, const TElement& t) {
  std::vector<Dyadic> xs;
  xs.reserve(s.lift_.size() + t.lift_.size());
  for (std::size_t i = 0; i + 1 < t.lift_.size(); ++i) xs.push_back(t.lift_[i].first);
  for (std::size_t i = 0; i + 1 < s.lift_.size(); ++i)
    xs.push_back(t.preimage(s.lift_[i].first));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto ext_lift = [&s](const Dyadic& v) {
    Dyadic k(v.floor());
    return s.lift_evaluate(v - k) + k;
  };

  BreakList lift;
  lift.reserve(xs.size() + 1);
  for (const auto& x : xs) lift.emplace_back(x, ext_lift(t.lift_evaluate(x)));
  lift.emplace_back(Dyadic(1), ext_lift(t.lift_evaluate(Dyadic(1))));
  assert(lift.back().second == lift.front().second + Dyadic(1));

  Dyadic shift(lift.front().second.floor());
  for (auto& [x, w] : lift) w = w - shift;
  return TElement::trusted(std::move(lift));
}

bool TElement::operator<(const TElement& other) const {
  return std::lexicographical_compare(
      lift_.begin(), lift_.end(), other.lift_.begin(), other.lift_.end(),
      [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first < q.first;
        return p.second < q.second;
      });
}

}  // namespace trep

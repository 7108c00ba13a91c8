#include "trep/session.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "trep/json_io.hpp"

namespace trep {

namespace {

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names{
      "let", "pl", "circ", "step", "ind", "r2", "i", "ph",
      "rot", "embed", "charf", "charr", "deltaf", "deltat",
      "random", "eq", "decomp", "repscalar", "transport", "conjchar"};
  return names;
}

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(msg); }

std::string describe(const Value& v) { return kind_name(v); }

Rational want_rational(const Value& v, const std::string& ctx) {
  if (auto r = std::get_if<Rational>(&v)) return *r;
  if (auto c = std::get_if<Coeff>(&v)) {
    if (auto r = c->as_rational()) return *r;
  }
  bad(ctx + ": expected a rational, got " + describe(v));
}

Dyadic want_dyadic(const Value& v, const std::string& ctx) {
  Rational r = want_rational(v, ctx);
  auto d = Dyadic::from_rational(r);
  if (!d) bad(ctx + ": " + rational_to_string(r) + " is not dyadic");
  return *d;
}

long long want_int(const Value& v, const std::string& ctx) {
  Rational r = want_rational(v, ctx);
  if (boost::multiprecision::denominator(r) != 1) bad(ctx + ": expected an integer");
  Integer n = boost::multiprecision::numerator(r);
  if (n > Integer(std::numeric_limits<long long>::max()) ||
      n < Integer(std::numeric_limits<long long>::min()))
    bad(ctx + ": integer out of range");
  return n.convert_to<long long>();
}

Coeff want_coeff(const Value& v, const std::string& ctx) {
  if (auto r = std::get_if<Rational>(&v)) return Coeff(*r);
  if (auto c = std::get_if<Coeff>(&v)) return *c;
  bad(ctx + ": expected a coefficient, got " + describe(v));
}

StepFunction want_step(const Value& v, const std::string& ctx) {
  if (auto f = std::get_if<StepFunction>(&v)) return *f;
  if (std::holds_alternative<Rational>(v) || std::holds_alternative<Coeff>(v))
    return StepFunction::constant(want_coeff(v, ctx));
  bad(ctx + ": expected a step function, got " + describe(v));
}

FElement want_f(const Value& v, const std::string& ctx) {
  if (auto g = std::get_if<FElement>(&v)) return *g;
  bad(ctx + ": expected an interval element, got " + describe(v));
}

TElement want_t(const Value& v, const std::string& ctx, std::vector<std::string>* notes) {
  if (auto t = std::get_if<TElement>(&v)) return *t;
  if (auto g = std::get_if<FElement>(&v)) {
    if (notes) notes->push_back("note: interval element embedded into the circle group");
    return TElement::embed(*g);
  }
  bad(ctx + ": expected a circle element, got " + describe(v));
}

// Collapses purely rational coefficients into the rational kind, keeping the
// printed form unambiguous.
Value make_value(Coeff c) {
  if (auto r = c.as_rational()) return Value(*r);
  return Value(std::move(c));
}

struct Flags {
  const Expr& stage;
  std::set<std::string> used;

  const Expr* find(const std::string& name) {
    const Expr* hit = nullptr;
    for (const auto& [n, e] : stage.flags)
      if (n == name) hit = e.get();
    if (hit) used.insert(name);
    return hit;
  }

  void finish() {
    for (const auto& [n, e] : stage.flags)
      if (!used.count(n)) bad("unknown option --" + n + " for command '" + stage.text + "'");
  }
};

Rational pow_rational(Rational base, long long n) {
  if (n < 0) {
    if (base == 0) bad("division by zero");
    base = Rational(1) / base;
    n = -n;
  }
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

bool is_element(const Value& v) {
  return std::holds_alternative<FElement>(v) || std::holds_alternative<TElement>(v);
}

Value element_power(const Value& v, long long n) {
  if (auto f = std::get_if<FElement>(&v)) {
    FElement base = n < 0 ? f->inverse() : *f;
    FElement acc;
    for (long long k = 0; k < std::llabs(n); ++k) acc = compose(acc, base);
    return acc;
  }
  const TElement& t = std::get<TElement>(v);
  TElement base = n < 0 ? t.inverse() : t;
  TElement acc;
  for (long long k = 0; k < std::llabs(n); ++k) acc = compose(acc, base);
  return acc;
}

std::string format_complex(std::complex<double> z, double s) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() < 0 || std::signbit(z.imag()))
    os << "-" << -z.imag() << "i";
  else
    os << "+" << z.imag() << "i";
  std::ostringstream tag;
  tag.precision(12);
  tag << s;
  return os.str() + " (s=" + tag.str() + ")";
}

}  // namespace

FElement Session::next_random_element(int max_depth) {
  if (max_depth < 1 || max_depth > 64) bad("random depth must be between 1 and 64");
  ++draws_;
  Rng rng(seed_ ^ (draws_ * 0x9e3779b97f4a7c15ULL));
  return random_element(max_depth, rng);
}

Value Session::eval_call(const Expr& e, std::vector<std::string>& notes) {
  const std::string& name = e.text;
  auto arity = [&](std::size_t n) {
    if (e.kids.size() != n)
      bad(name + " expects " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  };
  auto arg = [&](std::size_t idx) { return eval_expr(*e.kids[idx], notes); };

  if (name == "rot") {
    arity(1);
    return TElement::rotation(want_dyadic(arg(0), "rot"));
  }
  if (name == "embed") {
    arity(1);
    return TElement::embed(want_f(arg(0), "embed"));
  }
  if (name == "charf") {
    arity(5);
    std::array<Rational, 4> angles{
        want_rational(arg(1), "charf"), want_rational(arg(2), "charf"),
        want_rational(arg(3), "charf"), want_rational(arg(4), "charf")};
    return CharacterF::make(want_dyadic(arg(0), "charf"), angles);
  }
  if (name == "charr") {
    arity(1);
    return CharacterR{want_int(arg(0), "charr")};
  }
  if (name == "deltaf") {
    arity(1);
    Dyadic q = want_dyadic(arg(0), "deltaf");
    if (!(Dyadic(0) < q && q < Dyadic(1))) bad("deltaf: support point must lie in (0,1)");
    return InducedF::basis(q);
  }
  if (name == "deltat") {
    arity(1);
    TElement t = want_t(arg(0), "deltat", &notes);
    return InducedT::basis(t.coset_repr().first);
  }
  if (name == "random") {
    arity(1);
    return next_random_element(static_cast<int>(want_int(arg(0), "random")));
  }
  if (name == "eq") {
    arity(2);
    Value a = arg(0);
    Value b = arg(1);
    // compare across the rational/coefficient collapse
    if ((std::holds_alternative<Rational>(a) || std::holds_alternative<Coeff>(a)) &&
        (std::holds_alternative<Rational>(b) || std::holds_alternative<Coeff>(b)))
      return Rational(want_coeff(a, "eq") == want_coeff(b, "eq") ? 1 : 0);
    return Rational(a == b ? 1 : 0);
  }
  if (name == "decomp") {
    arity(2);
    Dyadic x = want_dyadic(arg(0), "decomp");
    long long k = want_int(arg(1), "decomp");
    if (k < 1 || k > 4096) bad("decomp: term count must be between 1 and 4096");
    auto exps = decompose_power_sum(x, static_cast<int>(k));
    IntTuple out;
    for (int v : exps) out.items.push_back(v);
    return out;
  }
  if (name == "repscalar") {
    arity(1);
    long long m = want_int(arg(0), "repscalar");
    if (m < -512 || m > 512) bad("repscalar: exponent out of range");
    return make_value(rep_scalar(static_cast<int>(m)));
  }
  if (name == "transport") {
    arity(1);
    return restriction_transport(want_step(arg(0), "transport"));
  }
  if (name == "conjchar") {
    arity(2);
    Value chi = arg(0);
    if (auto cf = std::get_if<CharacterF>(&chi))
      return conjugate_character(*cf, want_f(arg(1), "conjchar"));
    bad("conjchar: expected a stabilizer character");
  }
  if (is_command_word(name)) {
    // call form of a command, e.g. section(1/2, 1/4)
    Expr stage;
    stage.kind = Expr::Kind::Stage;
    stage.col = e.col;
    stage.text = name;
    stage.kids = e.kids;
    StageResult r = eval_command(stage, std::nullopt);
    notes.insert(notes.end(), r.notes.begin(), r.notes.end());
    if (!r.value) {
      if (!r.verdict.empty())
        bad("command '" + name + "' returned the verdict '" + r.verdict +
            "' instead of a value");
      bad("command '" + name + "' returned no value");
    }
    return *r.value;
  }
  bad("unknown function '" + name + "'");
}

Value Session::eval_binary(const std::string& op, const Value& a, const Value& b,
                           std::vector<std::string>& notes) {
  bool a_elem = std::holds_alternative<FElement>(a) || std::holds_alternative<TElement>(a);
  bool b_elem = std::holds_alternative<FElement>(b) || std::holds_alternative<TElement>(b);
  bool a_step = std::holds_alternative<StepFunction>(a);
  bool b_step = std::holds_alternative<StepFunction>(b);

  if (op == "*") {
    if (a_elem && b_elem) {
      if (std::holds_alternative<FElement>(a) && std::holds_alternative<FElement>(b))
        return compose(std::get<FElement>(a), std::get<FElement>(b));
      return compose(want_t(a, "compose", &notes), want_t(b, "compose", &notes));
    }
    if (a_step && b_step)
      return pointwise_mul(std::get<StepFunction>(a), std::get<StepFunction>(b));
    if (a_step || b_step) {
      const StepFunction& f = a_step ? std::get<StepFunction>(a) : std::get<StepFunction>(b);
      const Value& scalar = a_step ? b : a;
      return scale(want_coeff(scalar, "scale"), f);
    }
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
      return std::get<Rational>(a) * std::get<Rational>(b);
    return make_value(want_coeff(a, "*") * want_coeff(b, "*"));
  }
  if (op == "/") {
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
      const Rational& d = std::get<Rational>(b);
      if (d == 0) bad("division by zero");
      return std::get<Rational>(a) / d;
    }
    return make_value(want_coeff(a, "/") * want_coeff(b, "/").pow(-1));
  }
  if (op == "+" || op == "-") {
    bool minus = op == "-";
    if (a_step || b_step) {
      StepFunction fa = want_step(a, op);
      StepFunction fb = want_step(b, op);
      return minus ? sub(fa, fb) : add(fa, fb);
    }
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
      const Rational& ra = std::get<Rational>(a);
      const Rational& rb = std::get<Rational>(b);
      return minus ? Rational(ra - rb) : Rational(ra + rb);
    }
    Coeff ca = want_coeff(a, op);
    Coeff cb = want_coeff(b, op);
    return make_value(minus ? ca - cb : ca + cb);
  }
  bad("unsupported operator '" + op + "'");
}

Value Session::eval_expr(const Expr& e, std::vector<std::string>& notes) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      return Rational(e.ival);
    case Expr::Kind::FloatLit:
      bad("decimal numbers are only allowed in numeric options such as --s");
    case Expr::Kind::StrLit:
      bad("string literals are only allowed as save/load paths");
    case Expr::Kind::Ident: {
      if (e.text == "r2") return make_value(Coeff(GaussSqrt2::sqrt2()));
      if (e.text == "i") return make_value(Coeff(GaussSqrt2::imag_unit()));
      if (e.text == "ph") return make_value(Coeff::phi(1));
      auto it = bindings_.find(e.text);
      if (it == bindings_.end()) bad("unknown identifier '" + e.text + "'");
      return it->second;
    }
    case Expr::Kind::Unary: {
      Value v = eval_expr(*e.kids[0], notes);
      if (auto r = std::get_if<Rational>(&v)) return Rational(-*r);
      if (auto c = std::get_if<Coeff>(&v)) return make_value(-*c);
      if (auto f = std::get_if<StepFunction>(&v)) return scale(Coeff(Rational(-1)), *f);
      bad("cannot negate a " + describe(v));
    }
    case Expr::Kind::Binary:
      return eval_binary(e.text, eval_expr(*e.kids[0], notes), eval_expr(*e.kids[1], notes),
                         notes);
    case Expr::Kind::Power: {
      Value v = eval_expr(*e.kids[0], notes);
      long long n = e.exponent;
      if (auto r = std::get_if<Rational>(&v)) {
        if (std::llabs(n) > 4096) bad("exponent out of range");
        return pow_rational(*r, n);
      }
      if (auto c = std::get_if<Coeff>(&v)) {
        if (std::llabs(n) > 512) bad("exponent out of range");
        return make_value(c->pow(n));
      }
      if (is_element(v)) {
        if (std::llabs(n) > 256) bad("element power out of range");
        return element_power(v, n);
      }
      bad("cannot raise a " + describe(v) + " to a power");
    }
    case Expr::Kind::Call:
      return eval_call(e, notes);
    case Expr::Kind::PlLit: {
      BreakList breaks;
      for (const auto& [xe, ye] : e.pairs)
        breaks.emplace_back(want_dyadic(eval_expr(*xe, notes), "pl breakpoint"),
                            want_dyadic(eval_expr(*ye, notes), "pl breakpoint"));
      return FElement::from_breaks(std::move(breaks));
    }
    case Expr::Kind::CircLit: {
      BreakList breaks;
      for (const auto& [xe, ye] : e.pairs)
        breaks.emplace_back(want_dyadic(eval_expr(*xe, notes), "circ breakpoint"),
                            want_dyadic(eval_expr(*ye, notes), "circ breakpoint"));
      return TElement::from_circle_breaks(breaks);
    }
    case Expr::Kind::StepLit: {
      std::vector<Dyadic> cuts;
      std::vector<Coeff> vals;
      for (std::size_t j = 0; j < e.triples.size(); ++j) {
        Dyadic lo = want_dyadic(eval_expr(*e.triples[j][0], notes), "step cut");
        Dyadic hi = want_dyadic(eval_expr(*e.triples[j][1], notes), "step cut");
        if (j == 0) {
          if (!lo.is_zero()) bad("step pieces must start at 0");
          cuts.push_back(lo);
        } else if (lo != cuts.back()) {
          bad("step pieces must be contiguous");
        }
        cuts.push_back(hi);
        vals.push_back(want_coeff(eval_expr(*e.triples[j][2], notes), "step value"));
      }
      return StepFunction::from_pieces(std::move(cuts), std::move(vals));
    }
    case Expr::Kind::IndLit: {
      if (e.triples.empty()) return InducedF();
      bool is_t = false;
      bool decided = false;
      InducedF vf;
      InducedT vt;
      for (const auto& triple : e.triples) {
        Value label = eval_expr(*triple[0], notes);
        Rational amp = want_rational(eval_expr(*triple[1], notes), "ind amplitude");
        Rational ang = want_rational(eval_expr(*triple[2], notes), "ind angle");
        bool label_t = std::holds_alternative<TElement>(label);
        if (!decided) {
          is_t = label_t;
          decided = true;
        } else if (is_t != label_t) {
          bad("ind labels must be all dyadic points or all circle elements");
        }
        if (label_t)
          vt.add(std::get<TElement>(label).coset_repr().first, RootSum::term(amp, ang));
        else {
          Dyadic q = want_dyadic(label, "ind label");
          if (!(Dyadic(0) < q && q < Dyadic(1))) bad("ind label must lie in (0,1)");
          vf.add(q, RootSum::term(amp, ang));
        }
      }
      if (is_t) return vt;
      return vf;
    }
    case Expr::Kind::SetLit: {
      PointSet s;
      for (const auto& k : e.kids)
        s.points.push_back(want_dyadic(eval_expr(*k, notes), "set element"));
      return s;
    }
    case Expr::Kind::TupleLit: {
      IntTuple t;
      for (const auto& k : e.kids)
        t.items.push_back(want_int(eval_expr(*k, notes), "tuple element"));
      return t;
    }
    case Expr::Kind::Stage: {
      StageResult r = eval_command(e, std::nullopt);
      notes.insert(notes.end(), r.notes.begin(), r.notes.end());
      if (!r.value) {
        if (!r.verdict.empty())
          bad("command '" + e.text + "' returned the verdict '" + r.verdict +
              "' instead of a value");
        bad("command '" + e.text + "' returned no value");
      }
      return *r.value;
    }
  }
  bad("unhandled expression");
}

Session::StageResult Session::eval_command(const Expr& stage, std::optional<Value> piped) {
  StageResult out;
  const std::string& cmd = stage.text;
  Flags flags{stage, {}};

  if (cmd == "save" || cmd == "load") {
    if (stage.kids.size() != 1 || stage.kids[0]->kind != Expr::Kind::StrLit)
      bad("'" + cmd + "' expects a quoted file path");
    if (piped) bad("'" + cmd + "' does not accept piped input");
    flags.finish();
    const std::string& path = stage.kids[0]->text;
    if (cmd == "save")
      save(path);
    else
      load(path);
    out.custom_text = (cmd == "save" ? "saved " : "loaded ") + path;
    return out;
  }

  std::vector<Value> args;
  for (const auto& k : stage.kids) args.push_back(eval_expr(*k, out.notes));
  if (piped) args.push_back(std::move(*piped));

  auto arity = [&](std::size_t n) {
    if (args.size() != n)
      bad("'" + cmd + "' expects " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") +
          ", got " + std::to_string(args.size()));
  };
  auto flag_rational = [&](const std::string& name) -> std::optional<Rational> {
    const Expr* e = flags.find(name);
    if (!e) return std::nullopt;
    std::vector<std::string> ignored;
    return want_rational(eval_expr(*e, ignored), "--" + name);
  };
  auto flag_double = [&](const std::string& name) -> std::optional<double> {
    const Expr* e = flags.find(name);
    if (!e) return std::nullopt;
    if (e->kind == Expr::Kind::FloatLit) return e->fval;
    std::vector<std::string> ignored;
    return rational_to_double(want_rational(eval_expr(*e, ignored), "--" + name));
  };
  auto flag_dyadic = [&](const std::string& name) -> std::optional<Dyadic> {
    const Expr* e = flags.find(name);
    if (!e) return std::nullopt;
    std::vector<std::string> ignored;
    return want_dyadic(eval_expr(*e, ignored), "--" + name);
  };
  auto flag_int = [&](const std::string& name) -> std::optional<long long> {
    const Expr* e = flags.find(name);
    if (!e) return std::nullopt;
    std::vector<std::string> ignored;
    return want_int(eval_expr(*e, ignored), "--" + name);
  };
  auto require = [&](auto opt, const std::string& name) {
    if (!opt) bad("'" + cmd + "' requires --" + name);
    return *opt;
  };

  if (cmd == "compose") {
    arity(2);
    out.value = eval_binary("*", args[0], args[1], out.notes);
  } else if (cmd == "invert") {
    arity(1);
    if (auto f = std::get_if<FElement>(&args[0]))
      out.value = f->inverse();
    else
      out.value = want_t(args[0], "invert", &out.notes).inverse();
  } else if (cmd == "eval") {
    arity(2);
    Dyadic x = want_dyadic(args[1], "eval point");
    if (auto f = std::get_if<FElement>(&args[0]))
      out.value = Value(f->evaluate(x).to_rational());
    else
      out.value = Value(want_t(args[0], "eval", &out.notes).evaluate(x).to_rational());
  } else if (cmd == "rn") {
    arity(1);
    if (auto f = std::get_if<FElement>(&args[0]))
      out.value = rn_derivative(*f).to_pow_step();
    else
      out.value = rn_derivative(want_t(args[0], "rn", &out.notes)).to_pow_step();
  } else if (cmd == "pi") {
    arity(2);
    out.value = apply_pi(want_f(args[0], "pi"), want_step(args[1], "pi"));
  } else if (cmd == "rho") {
    arity(2);
    out.value =
        apply_rho(want_t(args[0], "rho", &out.notes), want_step(args[1], "rho"));
  } else if (cmd == "inner") {
    arity(2);
    out.value =
        make_value(inner_product(want_step(args[0], "inner"), want_step(args[1], "inner")));
  } else if (cmd == "norm") {
    arity(1);
    out.value = make_value(norm_sq(want_step(args[0], "norm")));
  } else if (cmd == "numeval") {
    double s = flag_double("s").value_or(default_s_);
    arity(1);
    Coeff c = want_coeff(args[0], "numeval");
    out.custom_text = format_complex(c.eval(s), s);
  } else if (cmd == "project") {
    arity(3);
    out.value = project(want_step(args[0], "project"), want_dyadic(args[1], "project"),
                        want_dyadic(args[2], "project"));
  } else if (cmd == "mul") {
    arity(2);
    out.value = pointwise_mul(want_step(args[0], "mul"), want_step(args[1], "mul"));
  } else if (cmd == "quad") {
    Dyadic p = require(flag_dyadic("p"), "p");
    arity(1);
    auto q = want_f(args[0], "quad").log_slope_quadruple(p);
    IntTuple t;
    for (int k : q) t.items.push_back(k);
    out.value = t;
  } else if (cmd == "char-eval") {
    arity(2);
    if (auto cf = std::get_if<CharacterF>(&args[0]))
      out.value = Value(eval_character(*cf, want_f(args[1], "char-eval")));
    else if (auto cr = std::get_if<CharacterR>(&args[0]))
      out.value = Value(eval_character(*cr, want_t(args[1], "char-eval", &out.notes)));
    else
      bad("char-eval: first argument must be a character");
  } else if (cmd == "induce-f") {
    arity(3);
    auto cf = std::get_if<CharacterF>(&args[0]);
    if (!cf) bad("induce-f: first argument must be a stabilizer character");
    auto v = std::get_if<InducedF>(&args[2]);
    if (!v) bad("induce-f: third argument must be an induced vector over dyadic points");
    out.value = induced_apply_f(*cf, want_f(args[1], "induce-f"), *v);
  } else if (cmd == "induce-t") {
    arity(3);
    auto cr = std::get_if<CharacterR>(&args[0]);
    if (!cr) bad("induce-t: first argument must be a rotation character");
    auto v = std::get_if<InducedT>(&args[2]);
    if (!v) bad("induce-t: third argument must be an induced vector over cosets");
    out.value = induced_apply_t(*cr, want_t(args[1], "induce-t", &out.notes), *v);
  } else if (cmd == "section") {
    arity(2);
    out.value = section(want_dyadic(args[0], "section"), want_dyadic(args[1], "section"));
  } else if (cmd == "orbit") {
    Dyadic p = require(flag_dyadic("p"), "p");
    Dyadic q = require(flag_dyadic("q"), "q");
    long long count = require(flag_int("count"), "count");
    arity(0);
    PointSet s;
    s.points = orbit_witness(p, q, static_cast<int>(count));
    out.value = s;
  } else if (cmd == "probe-const") {
    arity(1);
    auto w = constancy_witness(want_step(args[0], "probe-const"));
    if (!w) {
      out.verdict = "constant";
    } else {
      out.notes.push_back("witness (a, b, h) = (" + w->a.str() + ", " + w->b.str() + ", " +
                          w->h.str() + ")");
      out.value = gamma_translation(w->a, w->b, w->h);
    }
  } else if (cmd == "probe-action") {
    Dyadic a = require(flag_dyadic("a"), "a");
    Dyadic b = require(flag_dyadic("b"), "b");
    arity(1);
    auto w = probe_nontrivial_action(want_step(args[0], "probe-action"), a, b);
    if (!w)
      out.verdict = "vanishes";
    else
      out.value = *w;
  } else if (cmd == "equiv") {
    double s = require(flag_double("s"), "s");
    double t = require(flag_double("t"), "t");
    double tol = flag_double("tol").value_or(1e-9);
    arity(0);
    auto k = equivalence_k(s, t, tol);
    if (!k) {
      out.verdict = "inequivalent";
    } else {
      // |s - t| = 2k pi / ln 2; report the nonnegative k
      out.custom_text = "equivalent (k=" + std::to_string(std::llabs(*k)) + ")";
      out.value = Value(Rational(std::llabs(*k)));
    }
  } else {
    bad("unknown command '" + cmd + "'");
  }
  flags.finish();
  return out;
}

Session::StageResult Session::eval_stage(const Expr& stage, std::optional<Value> piped) {
  if (stage.kind == Expr::Kind::Stage) return eval_command(stage, std::move(piped));
  if (piped) bad("only commands can receive piped input");
  StageResult out;
  out.value = eval_expr(stage, out.notes);
  return out;
}

Session::Result Session::eval_line(const std::string& text) {
  auto render = [this](int status, const std::string& kind, const std::string& output,
                       const std::vector<std::string>& notes,
                       const Value* value) -> Result {
    if (!json_) {
      std::string s;
      for (const auto& n : notes) {
        s += n;
        s += '\n';
      }
      s += output;
      while (!s.empty() && s.back() == '\n') s.pop_back();
      return {status, s};
    }
    nlohmann::json j{{"status", status}, {"kind", kind}, {"output", output}};
    j["notes"] = notes;
    if (value && std::holds_alternative<StepFunction>(*value))
      j["value"] = step_to_json(std::get<StepFunction>(*value));
    else if (value && std::holds_alternative<Coeff>(*value))
      j["value"] = coeff_to_json(std::get<Coeff>(*value));
    return {status, j.dump()};
  };

  try {
    Line line = parse_line(text);
    if (line.stages.empty()) return render(0, "none", "", {}, nullptr);

    StageResult acc = eval_stage(*line.stages[0], std::nullopt);
    for (std::size_t i = 1; i < line.stages.size(); ++i) {
      if (!acc.verdict.empty()) bad("a negative verdict cannot be piped");
      if (!acc.value) bad("stage produced no value to pipe");
      StageResult next = eval_stage(*line.stages[i], std::move(acc.value));
      next.notes.insert(next.notes.begin(), acc.notes.begin(), acc.notes.end());
      acc = std::move(next);
    }

    if (line.let_name) {
      const std::string& name = *line.let_name;
      if (reserved_names().count(name) || is_command_word(name))
        throw ValidationError("'" + name + "' is a reserved name");
      if (!acc.verdict.empty())
        return render(3, "verdict", acc.verdict, acc.notes, nullptr);
      if (!acc.value) bad("this command result cannot be bound");
      bindings_[name] = *acc.value;
      return render(0, "none", "", acc.notes, nullptr);
    }

    if (!acc.verdict.empty()) return render(3, "verdict", acc.verdict, acc.notes, nullptr);
    std::string text_out = !acc.custom_text.empty()
                               ? acc.custom_text
                               : (acc.value ? to_text(*acc.value) : "");
    std::string kind = acc.value ? kind_name(*acc.value) : "text";
    return render(0, kind, text_out, acc.notes, acc.value ? &*acc.value : nullptr);
  } catch (const ParseError& e) {
    std::string msg = "parse error at 1:" + std::to_string(e.column()) + ": " + e.what();
    return render(1, "error", msg, {}, nullptr);
  } catch (const ValidationError& e) {
    return render(2, "error", std::string("error: ") + e.what(), {}, nullptr);
  } catch (const std::exception& e) {
    return render(2, "error", std::string("internal error: ") + e.what(), {}, nullptr);
  }
}

Value Session::eval_value(const std::string& text) {
  Line line = parse_line(text);
  if (line.let_name || line.stages.size() != 1)
    throw ValidationError("expected a single expression");
  StageResult r = eval_stage(*line.stages[0], std::nullopt);
  if (!r.value) throw ValidationError("expression produced no value");
  return *r.value;
}

void Session::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << "trep session v1\n";
  out << "@rng " << seed_ << " " << draws_ << "\n";
  for (const auto& [name, value] : bindings_)
    out << "let " << name << " = " << to_text(value) << "\n";
  if (!out) throw ValidationError("failed while writing '" + path + "'");
}

void Session::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::string header;
  std::getline(in, header);
  if (header.rfind("trep session v", 0) != 0)
    throw ValidationError("'" + path + "' is not a session file");
  if (header != "trep session v1")
    throw ValidationError("unsupported session version: " + header);

  std::string rng_line;
  std::getline(in, rng_line);
  std::istringstream rng_in(rng_line);
  std::string tag;
  std::uint64_t seed = 0, draws = 0;
  rng_in >> tag >> seed >> draws;
  if (tag != "@rng" || rng_in.fail())
    throw ValidationError("malformed random state line in '" + path + "'");

  std::map<std::string, Value> loaded;
  std::string line_text;
  int line_no = 2;
  while (std::getline(in, line_text)) {
    ++line_no;
    if (line_text.empty()) continue;
    Line line;
    try {
      line = parse_line(line_text);
    } catch (const ParseError& e) {
      throw ValidationError("line " + std::to_string(line_no) + " of '" + path +
                            "': " + e.what());
    }
    if (!line.let_name || line.stages.size() != 1)
      throw ValidationError("line " + std::to_string(line_no) + " of '" + path +
                            "' is not a binding");
    std::vector<std::string> notes;
    loaded[*line.let_name] = eval_expr(*line.stages[0], notes);
  }
  bindings_ = std::move(loaded);
  seed_ = seed;
  draws_ = draws;
}

}  // namespace trep

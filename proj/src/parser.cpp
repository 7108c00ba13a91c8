#include "trep/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace trep {

namespace {

const std::set<std::string>& command_words() {
  static const std::set<std::string> words{
      "compose", "invert", "eval",       "rn",          "pi",      "rho",
      "inner",   "norm",   "numeval",    "project",     "mul",     "quad",
      "char-eval", "induce-f", "induce-t", "section",   "orbit",   "probe-const",
      "probe-action", "equiv", "save",   "load"};
  return words;
}

enum class Tok {
  End,
  Int,
  Float,
  Ident,
  Str,
  Flag,
  KwLet,
  KwPl,
  KwCirc,
  KwStep,
  KwInd,
  LParen,
  RParen,
  LBrack,
  RBrack,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Semi,
  Pipe,
  Caret,
  Star,
  Slash,
  Plus,
  Minus,
  Assign,
  Arrow,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Integer ival;
  double fval = 0.0;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      Token t = next();
      bool end = t.kind == Tok::End;
      out.push_back(std::move(t));
      if (end) break;
    }
    return out;
  }

 private:
  const std::string& src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, static_cast<int>(at) + 1);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.col = static_cast<int>(pos_) + 1;
    if (pos_ >= src_.size() || src_[pos_] == '#') {
      t.kind = Tok::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_word(t);
    switch (c) {
      case '"':
        return lex_string(t);
      case '(': ++pos_; t.kind = Tok::LParen; return t;
      case ')': ++pos_; t.kind = Tok::RParen; return t;
      case '[': ++pos_; t.kind = Tok::LBrack; return t;
      case ']': ++pos_; t.kind = Tok::RBrack; return t;
      case '{': ++pos_; t.kind = Tok::LBrace; return t;
      case '}': ++pos_; t.kind = Tok::RBrace; return t;
      case ',': ++pos_; t.kind = Tok::Comma; return t;
      case ':': ++pos_; t.kind = Tok::Colon; return t;
      case ';': ++pos_; t.kind = Tok::Semi; return t;
      case '|': ++pos_; t.kind = Tok::Pipe; return t;
      case '^': ++pos_; t.kind = Tok::Caret; return t;
      case '*': ++pos_; t.kind = Tok::Star; return t;
      case '/': ++pos_; t.kind = Tok::Slash; return t;
      case '+': ++pos_; t.kind = Tok::Plus; return t;
      case '=':
        if (peek(1) == '>') {
          pos_ += 2;
          t.kind = Tok::Arrow;
          return t;
        }
        ++pos_;
        t.kind = Tok::Assign;
        return t;
      case '-':
        if (peek(1) == '-' && (std::isalpha(static_cast<unsigned char>(peek(2))))) {
          pos_ += 2;
          std::size_t start = pos_;
          while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
          t.kind = Tok::Flag;
          t.text = src_.substr(start, pos_ - start);
          return t;
        }
        ++pos_;
        t.kind = Tok::Minus;
        return t;
      default:
        fail(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  Token lex_number(Token t) {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    bool is_float = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      is_float = true;
      pos_ += 2;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string text = src_.substr(start, pos_ - start);
    if (is_float) {
      t.kind = Tok::Float;
      try {
        t.fval = std::stod(text);
      } catch (const std::exception&) {
        fail("number out of range", start);
      }
    } else {
      t.kind = Tok::Int;
      t.ival = Integer(text);
    }
    t.text = std::move(text);
    return t;
  }

  Token lex_word(Token t) {
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    std::string word = src_.substr(start, pos_ - start);
    // Hyphenated command names lex as a single word.
    std::size_t probe = pos_;
    std::string extended = word;
    while (src_.size() > probe && src_[probe] == '-' && probe + 1 < src_.size() &&
           std::isalpha(static_cast<unsigned char>(src_[probe + 1]))) {
      std::size_t q = probe + 1;
      while (q < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[q])) || src_[q] == '_'))
        ++q;
      extended += src_.substr(probe, q - probe);
      probe = q;
    }
    if (extended != word && command_words().count(extended)) {
      pos_ = probe;
      word = extended;
    }
    if (word == "let")
      t.kind = Tok::KwLet;
    else if (word == "pl")
      t.kind = Tok::KwPl;
    else if (word == "circ")
      t.kind = Tok::KwCirc;
    else if (word == "step")
      t.kind = Tok::KwStep;
    else if (word == "ind")
      t.kind = Tok::KwInd;
    else
      t.kind = Tok::Ident;
    t.text = std::move(word);
    return t;
  }

  Token lex_string(Token t) {
    std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string s;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
      s += src_[pos_++];
    }
    if (pos_ >= src_.size()) fail("unterminated string", start);
    ++pos_;  // closing quote
    t.kind = Tok::Str;
    t.text = std::move(s);
    return t;
  }
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Line parse() {
    Line line;
    if (at(Tok::End)) return line;
    if (at(Tok::KwLet)) {
      advance();
      Token name = expect(Tok::Ident, "binding name");
      line.let_name = name.text;
      line.let_col = name.col;
      expect(Tok::Assign, "'='");
    }
    line.stages.push_back(parse_stage());
    while (at(Tok::Pipe)) {
      advance();
      line.stages.push_back(parse_stage());
    }
    if (!at(Tok::End)) fail("unexpected token after expression");
    return line;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > 200) throw ParseError("expression nested too deeply", p.cur().col);
    }
    ~DepthGuard() { --p.depth_; }
  };

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  void advance() {
    if (!at(Tok::End)) ++pos_;
  }

  // True when the current identifier is immediately followed by '(' with no
  // whitespace: the call form `name(args)` rather than `name args`.
  bool call_form_ahead() const {
    if (pos_ + 1 >= toks_.size()) return false;
    const Token& next = toks_[pos_ + 1];
    return next.kind == Tok::LParen &&
           next.col == cur().col + static_cast<int>(cur().text.size());
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur().col); }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    Token t = cur();
    advance();
    return t;
  }

  static ExprPtr node(Expr::Kind k, int col) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->col = col;
    return e;
  }

  bool starts_expr() const {
    switch (cur().kind) {
      case Tok::Int:
      case Tok::Float:
      case Tok::Ident:
      case Tok::Str:
      case Tok::KwPl:
      case Tok::KwCirc:
      case Tok::KwStep:
      case Tok::KwInd:
      case Tok::LParen:
      case Tok::LBrace:
      case Tok::Minus:
        return true;
      default:
        return false;
    }
  }

  ExprPtr parse_stage() {
    if (at(Tok::Ident) && command_words().count(cur().text) && !call_form_ahead()) {
      auto stage = node(Expr::Kind::Stage, cur().col);
      stage->text = cur().text;
      advance();
      for (;;) {
        if (at(Tok::Flag)) {
          std::string name = cur().text;
          advance();
          if (!starts_expr()) fail("expected a value after --" + name);
          stage->flags.emplace_back(name, parse_expr());
        } else if (starts_expr()) {
          stage->kids.push_back(parse_expr());
        } else {
          break;
        }
      }
      return stage;
    }
    if (!starts_expr()) fail("expected a command or an expression");
    return parse_expr();
  }

  ExprPtr parse_expr() {
    DepthGuard guard(*this);
    ExprPtr lhs = parse_mul();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      auto op = node(Expr::Kind::Binary, cur().col);
      op->text = at(Tok::Plus) ? "+" : "-";
      advance();
      op->kids.push_back(lhs);
      op->kids.push_back(parse_mul());
      lhs = op;
    }
    return lhs;
  }

  ExprPtr parse_mul() {
    ExprPtr lhs = parse_unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      auto op = node(Expr::Kind::Binary, cur().col);
      op->text = at(Tok::Star) ? "*" : "/";
      advance();
      op->kids.push_back(lhs);
      op->kids.push_back(parse_unary());
      lhs = op;
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    DepthGuard guard(*this);
    if (at(Tok::Minus)) {
      auto op = node(Expr::Kind::Unary, cur().col);
      op->text = "-";
      advance();
      op->kids.push_back(parse_unary());
      return op;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (at(Tok::Caret)) {
      auto op = node(Expr::Kind::Power, cur().col);
      advance();
      bool neg = false;
      if (at(Tok::Minus)) {
        neg = true;
        advance();
      }
      Token e = expect(Tok::Int, "an integer exponent");
      if (e.ival > Integer(1000000)) fail("exponent too large");
      op->exponent = e.ival.convert_to<long long>();
      if (neg) op->exponent = -op->exponent;
      op->kids.push_back(base);
      if (at(Tok::Caret)) fail("chained '^' needs parentheses");
      return op;
    }
    return base;
  }

  ExprPtr parse_primary() {
    switch (cur().kind) {
      case Tok::Int: {
        auto e = node(Expr::Kind::IntLit, cur().col);
        e->ival = cur().ival;
        advance();
        return e;
      }
      case Tok::Float: {
        auto e = node(Expr::Kind::FloatLit, cur().col);
        e->fval = cur().fval;
        advance();
        return e;
      }
      case Tok::Str: {
        auto e = node(Expr::Kind::StrLit, cur().col);
        e->text = cur().text;
        advance();
        return e;
      }
      case Tok::Ident: {
        bool call = call_form_ahead();
        auto e = node(Expr::Kind::Ident, cur().col);
        e->text = cur().text;
        advance();
        if (call) {
          auto call = node(Expr::Kind::Call, e->col);
          call->text = e->text;
          advance();
          if (!at(Tok::RParen)) {
            call->kids.push_back(parse_expr());
            while (at(Tok::Comma)) {
              advance();
              call->kids.push_back(parse_expr());
            }
          }
          expect(Tok::RParen, "')'");
          return call;
        }
        return e;
      }
      case Tok::KwPl:
        return parse_break_literal(Expr::Kind::PlLit);
      case Tok::KwCirc:
        return parse_break_literal(Expr::Kind::CircLit);
      case Tok::KwStep:
        return parse_step_literal();
      case Tok::KwInd:
        return parse_ind_literal();
      case Tok::LBrace:
        return parse_set_literal();
      case Tok::LParen:
        return parse_paren();
      default:
        fail("expected an expression");
    }
  }

  ExprPtr parse_pair_into(std::vector<std::pair<ExprPtr, ExprPtr>>& pairs) {
    expect(Tok::LParen, "'('");
    ExprPtr a = parse_expr();
    expect(Tok::Comma, "','");
    ExprPtr b = parse_expr();
    expect(Tok::RParen, "')'");
    pairs.emplace_back(std::move(a), std::move(b));
    return nullptr;
  }

  ExprPtr parse_break_literal(Expr::Kind kind) {
    auto e = node(kind, cur().col);
    advance();
    expect(Tok::LBrack, "'['");
    parse_pair_into(e->pairs);
    while (at(Tok::Comma)) {
      advance();
      parse_pair_into(e->pairs);
    }
    expect(Tok::RBrack, "']'");
    return e;
  }

  ExprPtr parse_step_literal() {
    auto e = node(Expr::Kind::StepLit, cur().col);
    advance();
    expect(Tok::LBrace, "'{'");
    for (;;) {
      ExprPtr lo = parse_expr();
      expect(Tok::Colon, "':'");
      ExprPtr hi = parse_expr();
      expect(Tok::Arrow, "'=>'");
      ExprPtr val = parse_expr();
      e->triples.push_back({std::move(lo), std::move(hi), std::move(val)});
      if (at(Tok::Semi)) {
        advance();
        if (at(Tok::RBrace)) break;
        continue;
      }
      break;
    }
    expect(Tok::RBrace, "'}'");
    return e;
  }

  ExprPtr parse_ind_literal() {
    auto e = node(Expr::Kind::IndLit, cur().col);
    advance();
    expect(Tok::LBrack, "'['");
    if (!at(Tok::RBrack)) {
      for (;;) {
        expect(Tok::LParen, "'('");
        ExprPtr label = parse_expr();
        expect(Tok::Comma, "','");
        ExprPtr amp = parse_expr();
        expect(Tok::Comma, "','");
        ExprPtr ang = parse_expr();
        expect(Tok::RParen, "')'");
        e->triples.push_back({std::move(label), std::move(amp), std::move(ang)});
        if (!at(Tok::Comma)) break;
        advance();
      }
    }
    expect(Tok::RBrack, "']'");
    return e;
  }

  ExprPtr parse_set_literal() {
    auto e = node(Expr::Kind::SetLit, cur().col);
    advance();
    if (!at(Tok::RBrace)) {
      e->kids.push_back(parse_expr());
      while (at(Tok::Comma)) {
        advance();
        e->kids.push_back(parse_expr());
      }
    }
    expect(Tok::RBrace, "'}'");
    return e;
  }

  ExprPtr parse_paren() {
    int col = cur().col;
    advance();  // '('
    ExprPtr inner;
    if (at(Tok::Ident) && command_words().count(cur().text) && !call_form_ahead()) {
      inner = parse_stage();
      expect(Tok::RParen, "')'");
      return inner;
    }
    inner = parse_expr();
    if (at(Tok::Comma)) {
      auto tuple = node(Expr::Kind::TupleLit, col);
      tuple->kids.push_back(inner);
      while (at(Tok::Comma)) {
        advance();
        tuple->kids.push_back(parse_expr());
      }
      expect(Tok::RParen, "')'");
      return tuple;
    }
    expect(Tok::RParen, "')'");
    return inner;
  }
};

}  // namespace

bool is_command_word(const std::string& word) { return command_words().count(word) > 0; }

Line parse_line(const std::string& text) {
  Lexer lex(text);
  Parser parser(lex.run());
  return parser.parse();
}

}  // namespace trep

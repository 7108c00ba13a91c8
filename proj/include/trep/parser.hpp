#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trep/common.hpp"

namespace trep {

/// Parse tree node. One struct covers expressions, literals and command
/// stages; `kind` selects which members are meaningful.
struct Expr {
  enum class Kind {
    IntLit,     // ival
    FloatLit,   // fval
    StrLit,     // text
    Ident,      // text
    Unary,      // text = operator, kids[0]
    Binary,     // text = operator, kids[0], kids[1]
    Power,      // kids[0], exponent
    Call,       // text = function name, kids = arguments
    PlLit,      // pairs
    CircLit,    // pairs
    StepLit,    // triples (lo, hi, value)
    IndLit,     // triples (label, amplitude, angle)
    SetLit,     // kids
    TupleLit,   // kids
    Stage,      // text = command, kids = positional args, flags
  };

  Kind kind;
  int col = 1;
  std::string text;
  Integer ival;
  double fval = 0.0;
  long long exponent = 0;
  std::vector<std::shared_ptr<Expr>> kids;
  std::vector<std::pair<std::shared_ptr<Expr>, std::shared_ptr<Expr>>> pairs;
  std::vector<std::array<std::shared_ptr<Expr>, 3>> triples;
  std::vector<std::pair<std::string, std::shared_ptr<Expr>>> flags;
};

using ExprPtr = std::shared_ptr<Expr>;

/// One input line: an optional `let <name> =` prefix and a pipeline of
/// stages. An empty line parses to zero stages.
struct Line {
  std::optional<std::string> let_name;
  int let_col = 1;
  std::vector<ExprPtr> stages;
};

bool is_command_word(const std::string& word);

// Throws ParseError with a 1-based column on malformed input.
Line parse_line(const std::string& text);

}  // namespace trep

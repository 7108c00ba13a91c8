#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trep/parser.hpp"
#include "trep/value.hpp"

namespace trep {

/// REPL state: named bindings plus the reproducible random source. All
/// declared commands run through eval_line, which never throws.
///
/// Status codes: 0 success, 1 parse error, 2 validation or precondition
/// error, 3 a probe reported a negative verdict.
class Session {
 public:
  explicit Session(std::uint64_t seed = 0) : seed_(seed) {}

  struct Result {
    int status = 0;
    std::string output;  // possibly empty; no trailing newline
  };

  Result eval_line(const std::string& line);

  // Parses and evaluates a single expression; throws on errors. Intended for
  // programmatic use and round trip checks.
  Value eval_value(const std::string& text);

  void set_default_s(double s) { default_s_ = s; }
  double default_s() const { return default_s_; }
  void set_json(bool on) { json_ = on; }
  bool json_output() const { return json_; }

  const std::map<std::string, Value>& bindings() const { return bindings_; }

  // Both throw ValidationError on I/O or format problems.
  void save(const std::string& path) const;
  void load(const std::string& path);

 private:
  struct StageResult {
    std::optional<Value> value;
    std::vector<std::string> notes;
    std::string verdict;      // nonempty: status 3
    std::string custom_text;  // overrides the default value rendering
  };

  StageResult eval_stage(const Expr& stage, std::optional<Value> piped);
  StageResult eval_command(const Expr& stage, std::optional<Value> piped);
  Value eval_expr(const Expr& e, std::vector<std::string>& notes);
  Value eval_call(const Expr& e, std::vector<std::string>& notes);
  Value eval_binary(const std::string& op, const Value& a, const Value& b,
                    std::vector<std::string>& notes);

  FElement next_random_element(int max_depth);

  std::map<std::string, Value> bindings_;
  std::uint64_t seed_ = 0;
  std::uint64_t draws_ = 0;
  double default_s_ = 0.0;
  bool json_ = false;
};

}  // namespace trep

#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace trep {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Domain precondition failure. The shell maps these to status code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error with a 1-based column. The shell maps these to status code 1.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int column)
      : std::runtime_error(msg), column_(column) {}
  int column() const { return column_; }

 private:
  int column_ = 0;
};

Integer floor_rational(const Rational& r);
// r - floor(r), always in [0,1)
Rational frac_mod1(const Rational& r);
std::string rational_to_string(const Rational& r);
double rational_to_double(const Rational& r);

}  // namespace trep

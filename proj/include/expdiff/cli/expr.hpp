#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expdiff/algebra/ratfun.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

// Error(Parse) carrying a 1-based position; line 0 means "not yet known".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string reason);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }
  ParseError at_line(std::size_t line) const { return ParseError(line, column_, reason_); }

 private:
  std::size_t line_, column_;
  std::string reason_;
};

// Parses integers, rationals, names drawn from `names`, + - * / ^ with
// integer exponents and parentheses into a rational function in
// names.size() variables. Throws ParseError (line 0); `column_offset`
// shifts reported columns.
RationalFunction parse_expression(std::string_view text, std::span<const std::string> names,
                                  std::size_t column_offset = 0);

// Test and tooling convenience: parse into a polynomial, requiring a
// polynomial result.
MultiPoly parse_polynomial(std::string_view text, std::span<const std::string> names);

}  // namespace expdiff

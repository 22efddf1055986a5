#include "expdiff/cli/expr.hpp"

#include <cctype>
#include <stdexcept>

#include "expdiff/error.hpp"

namespace expdiff {

namespace {

std::string position_text(std::size_t line, std::size_t column, const std::string& reason) {
  std::string where = line ? "line " + std::to_string(line) + ", " : std::string();
  return where + "col " + std::to_string(column) + ": " + reason;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string reason)
    : Error(ErrorCode::Parse, position_text(line, column, reason)), line_(line), column_(column),
      reason_(std::move(reason)) {}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::span<const std::string> names, std::size_t offset)
      : text_(text), names_(names), offset_(offset) {}

  RationalFunction parse() {
    RationalFunction r = sum();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& why) const {
    throw ParseError(0, offset_ + pos_ + 1, why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction sum() {
    RationalFunction acc = product();
    for (;;) {
      if (accept('+'))
        acc = acc + product();
      else if (accept('-'))
        acc = acc - product();
      else
        return acc;
    }
  }

  RationalFunction product() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) {
          pos_ = at;
          error("division by zero");
        }
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (accept('^')) {
      skip_ws();
      bool neg = false;
      if (accept('-')) neg = true;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected integer exponent");
      if (pos_ - start > 4) error("exponent too large");
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (neg) {
        if (base.is_zero()) error("negative power of zero");
        e = -e;
      }
      return base.pow(e);
    }
    return base;
  }

  RationalFunction atom() {
    skip_ws();
    const std::size_t n = names_.size();
    if (pos_ >= text_.size()) error("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = sum();
      if (!accept(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Z z(std::string(text_.substr(start, pos_ - start)));
      return RationalFunction::constant(n, Q(z));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < n; ++i)
        if (names_[i] == name) return RationalFunction::variable(n, i);
      pos_ = start;
      error("unknown name '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_expression(std::string_view text, std::span<const std::string> names,
                                  std::size_t column_offset) {
  return ExprParser(text, names, column_offset).parse();
}

MultiPoly parse_polynomial(std::string_view text, std::span<const std::string> names) {
  RationalFunction r = parse_expression(text, names);
  if (!r.is_polynomial()) throw std::invalid_argument("parse_polynomial: not a polynomial");
  return r.num();
}

}  // namespace expdiff

#pragma once

#include <span>
#include <string>
#include <vector>

#include "expdiff/algebra/poly.hpp"

namespace expdiff {

// Element of Q(z_1, ..., z_k) in canonical form: numerator and denominator
// coprime, denominator with lex leading coefficient 1. Representation
// equality is field equality.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(std::size_t nvars) : num_(nvars), den_(MultiPoly::constant(nvars, Q(1))) {}
  explicit RationalFunction(MultiPoly num);
  RationalFunction(MultiPoly num, MultiPoly den);

  static RationalFunction constant(std::size_t nvars, const Q& c);
  static RationalFunction variable(std::size_t nvars, std::size_t index);
  // Trusts the caller: coprime, denominator non-constant with leading coefficient 1.
  static RationalFunction from_reduced(MultiPoly num, MultiPoly den);

  std::size_t nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Q constant_value() const { return num_.constant_value(); }
  bool involves(std::size_t var) const { return num_.involves(var) || den_.involves(var); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  bool operator==(const RationalFunction&) const = default;

  RationalFunction pow(int e) const;
  RationalFunction inverse() const;
  // Formal partial derivative with respect to variable var.
  RationalFunction derivative(std::size_t var) const;
  RationalFunction extended(std::size_t new_nvars) const;
  RationalFunction remapped(std::size_t new_nvars, std::span<const int> map) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

// Substitute values[i] for variable i of p; all values share one ring.
RationalFunction evaluate(const MultiPoly& p, std::span<const RationalFunction> values);
RationalFunction evaluate(const RationalFunction& f, std::span<const RationalFunction> values);

using RFVector = std::vector<RationalFunction>;
using RFMatrix = std::vector<RFVector>;

}  // namespace expdiff

#pragma once

#include <map>
#include <string>
#include <utility>

#include "expdiff/diff/field.hpp"

namespace expdiff {

// Sum of c_i dz_i over nonconstant generators; zero coefficients omitted.
class Form1 {
 public:
  Form1() = default;
  explicit Form1(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const std::map<std::size_t, RationalFunction>& coeffs() const { return coeffs_; }
  RationalFunction coeff(std::size_t gen) const;
  void set(std::size_t gen, const RationalFunction& c);
  bool is_zero() const { return coeffs_.empty(); }

  Form1 operator-() const;
  friend Form1 operator+(const Form1& a, const Form1& b);
  friend Form1 operator-(const Form1& a, const Form1& b) { return a + (-b); }
  friend Form1 operator*(const RationalFunction& a, const Form1& w);
  bool operator==(const Form1&) const = default;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_ = 0;
  std::map<std::size_t, RationalFunction> coeffs_;
};

// Sum of c_ij dz_i ^ dz_j with i < j.
class Form2 {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  Form2() = default;
  explicit Form2(std::size_t nvars) : nvars_(nvars) {}

  std::size_t nvars() const { return nvars_; }
  const std::map<Key, RationalFunction>& coeffs() const { return coeffs_; }
  // Antisymmetric access: coeff(j, i) = -coeff(i, j), coeff(i, i) = 0.
  RationalFunction coeff(std::size_t i, std::size_t j) const;
  // Adds c dz_i ^ dz_j, normalizing the order.
  void add(std::size_t i, std::size_t j, const RationalFunction& c);
  bool is_zero() const { return coeffs_.empty(); }

  friend Form2 operator+(const Form2& a, const Form2& b);
  friend Form2 operator*(const RationalFunction& a, const Form2& w);
  bool operator==(const Form2&) const = default;

 private:
  std::size_t nvars_ = 0;
  std::map<Key, RationalFunction> coeffs_;
};

Form1 differential(const DiffField& field, const RationalFunction& f);
Form2 exterior_d(const DiffField& field, const Form1& w);
Form2 wedge(const Form1& a, const Form1& b);
RationalFunction contract(const DiffField& field, std::size_t der, const Form1& w);
Form1 contract(const DiffField& field, std::size_t der, const Form2& w);
// Cartan: contract(d w) + d(contract w).
Form1 lie_derivative(const DiffField& field, std::size_t der, const Form1& w);

// dy/y - dx, the coordinate form whose contraction vanishes on Gamma.
Form1 gamma_form(const DiffField& field, const RationalFunction& x, const RationalFunction& y);

}  // namespace expdiff

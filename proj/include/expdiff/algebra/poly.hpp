#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expdiff/algebra/rational.hpp"

namespace expdiff {

using Monomial = std::vector<int>;

int total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial mono_gcd(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Terms are kept sorted by lex order (variable 0 largest), descending, with
// no zero coefficients; two polynomials are equal iff their term lists are.
class MultiPoly {
 public:
  struct Term {
    Monomial exponents;
    Q coeff;
    bool operator==(const Term&) const = default;
  };

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Q& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index, int power = 1);
  static MultiPoly monomial(std::size_t nvars, Monomial exps, const Q& c);
  // Terms may be unsorted and contain duplicates or zeros.
  static MultiPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // Requires is_constant().
  Q constant_value() const;

  const Term& leading_term() const { return terms_.front(); }
  const Q& leading_coeff() const { return terms_.front().coeff; }

  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  std::uint64_t support_mask() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Q& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Q& c) { return a *= c; }
  friend MultiPoly operator*(const Q& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& o) const = default;

  MultiPoly pow(unsigned e) const;
  MultiPoly derivative(std::size_t var) const;
  MultiPoly mul_monomial(const Monomial& m, const Q& c) const;

  // Scale so the leading coefficient is 1 (zero stays zero).
  MultiPoly monic() const;
  // Integer polynomial with coprime coefficients and positive leading coefficient.
  MultiPoly primitive_integral() const;

  // Embed into a ring with more variables; variable i maps to position i.
  MultiPoly extended(std::size_t new_nvars) const;
  // Variable i maps to index map[i] of a ring with new_nvars variables.
  // map[i] < 0 requires that variable i does not occur.
  MultiPoly remapped(std::size_t new_nvars, std::span<const int> map) const;

  // Coefficients with respect to one variable: result[d] is the coefficient
  // of var^d, itself a polynomial not involving var.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;

  Q evaluate(std::span<const Q> point) const;

  // Human-readable, parseable form; names.size() must equal nvars().
  std::string to_string(std::span<const std::string> names) const;

 private:
  void normalize();

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace expdiff

#pragma once

#include <optional>

#include "expdiff/algebra/poly.hpp"

namespace expdiff {

// Exact quotient a / b when b divides a, std::nullopt otherwise.
std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b);
// Throws std::domain_error when b does not divide a.
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);

// Pseudo-remainder of a by b as polynomials in var.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var);

// Monic gcd over Q (lex leading coefficient 1); gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

// gcd of the coefficients of a viewed as a polynomial in var.
MultiPoly content_in(const MultiPoly& a, std::size_t var);
MultiPoly primitive_part_in(const MultiPoly& a, std::size_t var);

}  // namespace expdiff

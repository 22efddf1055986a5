#pragma once

#include <optional>

#include "expdiff/algebra/ratfun.hpp"

namespace expdiff {

// Row echelon data of a matrix over the rational-function field.
struct Echelon {
  RFMatrix rref;                     // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row of rref
};

// Gauss-Jordan elimination; nvars is the ring arity used for empty matrices.
Echelon row_reduce(const RFMatrix& m, std::size_t ncols, std::size_t nvars);

std::size_t rank(const RFMatrix& m, std::size_t ncols, std::size_t nvars);

// Basis of {v : M v = 0}; one vector per free column, with a 1 there.
std::vector<RFVector> nullspace_over_field(const RFMatrix& m, std::size_t ncols, std::size_t nvars);

// Some solution of M v = b with free variables set to zero, if consistent.
std::optional<RFVector> solve_particular(const RFMatrix& m, const RFVector& b, std::size_t ncols,
                                         std::size_t nvars);

// Linear relations over Q: every entry of `values` is a rational function;
// returns the rows of an integer matrix A such that sum m_i values[i] = 0
// (as rational functions) iff A m = 0.
std::vector<std::vector<Z>> rational_relation_constraints(std::span<const RFVector> columns);

}  // namespace expdiff

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "expdiff/algebra/rational.hpp"

namespace expdiff {

using IntVec = std::vector<long long>;
using IntMatrix = std::vector<IntVec>;

// Row Hermite normal form: zero rows removed, pivots strictly increasing and
// positive, entries above a pivot reduced into [0, pivot).
std::vector<std::vector<Z>> hermite_normal_form(std::vector<std::vector<Z>> rows, std::size_t ncols);
IntMatrix hermite_normal_form(const IntMatrix& rows, std::size_t ncols);

long long gcd_of(const IntVec& v);
long long max_norm(const IntVec& v);
std::string format_vector(const IntVec& v);
std::string format_matrix(const IntMatrix& m);

// Sublattice of Z^n stored by its HNF basis.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(std::size_t ambient) : ambient_(ambient) {}

  // Integer span of the given rows.
  static IntLattice span(std::size_t ambient, const IntMatrix& generators);
  static IntLattice full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVec& v) const;
  bool is_saturated() const;
  // Integer points of the rational span.
  IntLattice saturation() const;

  bool operator==(const IntLattice&) const = default;
  auto operator<=>(const IntLattice&) const = default;

  std::string to_string() const;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

// Saturated lattice {m in Z^ncols : M m = 0}.
IntLattice lattice_kernel(const std::vector<std::vector<Z>>& m, std::size_t ncols);
IntLattice lattice_kernel(const IntMatrix& m, std::size_t ncols);

std::vector<std::vector<Z>> to_big(const IntMatrix& m);

}  // namespace expdiff

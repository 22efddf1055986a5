#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expdiff/algebra/groebner.hpp"
#include "expdiff/diff/field.hpp"
#include "expdiff/torus/torus.hpp"

namespace expdiff {

// Pairwise-coprime polynomials in nvars variables. Constant elements must
// be distinct primes and are used for the rational part of a coordinate;
// without them every nonzero rational is a unit.
class FactorBase {
 public:
  FactorBase() = default;
  // Throws Error(InvalidArgument) on a non-coprime pair, a zero element or
  // a constant element that is not a prime.
  FactorBase(std::size_t nvars, std::vector<MultiPoly> elements);

  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<MultiPoly>& elements() const { return elements_; }
  bool has_primes() const;

  struct Decomposition {
    Q unit;
    IntVec exponents;
  };
  // c = unit * prod base_i^e_i, or nullopt when c does not decompose.
  std::optional<Decomposition> decompose(const RationalFunction& c) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<MultiPoly> elements_;
};

// {m : prod x_i^m_i is a unit}. Throws Error(FactorizationIncomplete)
// naming the first coordinate that does not decompose.
IntLattice dependency_lattice(const RFVector& x, const FactorBase& base);

enum class CitStatus { Typical, AtypicalResolved, AtypicalUnresolved };
const char* cit_status_name(CitStatus s);

struct AtypicalityReport {
  std::size_t n = 0;
  int dim_u = 0;
  int dim_coset = 0;
  int td = 0;
  // dim X - (dim U + dim coset - n)
  long atypicality = 0;
  IntLattice dependencies;
  RFVector point;
  CitStatus status = CitStatus::Typical;
  std::optional<IntLattice> witness;
  int bound = -1;
  // dim X is read off the presented point, assumed generic on its component.
  bool generic_point_assumed = true;
};

// U is an ideal in y_1..y_n followed by the field generators; dim X is the
// transcendence degree of x over the constants and the generators U uses.
// Throws Error(PointNotOnU), Error(FactorizationIncomplete), Error(Budget).
AtypicalityReport analyze_intersection(const DiffField& field, const Ideal& u, const RFVector& x,
                                       const FactorBase& base, const GroebnerBudget& budget = {});

// Greedy search over dependency vectors of max-norm <= bound, ordered by
// norm then lexicographically, for a lattice J of rank >= atypicality with
// every x^m (m in J) constant. Typical reports are returned unchanged.
AtypicalityReport search_bounded_dependencies(const DiffField& field, AtypicalityReport report, int bound);

}  // namespace expdiff

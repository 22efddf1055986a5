#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expdiff/algebra/groebner.hpp"
#include "expdiff/parallel.hpp"
#include "expdiff/torus/torus.hpp"

namespace expdiff {

// Rational map s -> (x, y). Components live in base.ngens() + params.size()
// variables, base generators first.
struct Parametrization {
  std::vector<std::string> params;
  RFVector x, y;
  bool operator==(const Parametrization&) const = default;
};

// Subvariety of T(Gm^n) = A^n x Gm^n over the base field F = Q(generators).
// Equations are polynomials in x_1..x_n, y_1..y_n followed by the base
// generators (2n + k variables); y-invertibility is imposed by saturation.
class TSVariety {
 public:
  TSVariety() = default;

  // Throws Error(InvalidArgument) for the unit ideal or bad arity.
  static TSVariety from_equations(DiffField base, std::size_t n, std::vector<MultiPoly> equations,
                                  const GroebnerBudget& budget = {});
  // Throws Error(InvalidArgument) when some y-component is zero.
  static TSVariety from_parametrization(DiffField base, Parametrization param);
  // Both presentations of one variety; only their dimensions are compared.
  static TSVariety from_both(DiffField base, std::size_t n, std::vector<MultiPoly> equations, Parametrization param,
                             const GroebnerBudget& budget = {});
  // Adds the implicit equations of a parametrized variety.
  static TSVariety implicitize(const TSVariety& v, const GroebnerBudget& budget = {});

  std::size_t n() const { return n_; }
  const DiffField& base() const { return base_; }
  bool has_equations() const { return equations_.has_value(); }
  bool has_parametrization() const { return param_.has_value(); }
  const std::vector<MultiPoly>& equations() const { return *equations_; }
  const Parametrization& parametrization() const { return *param_; }
  int dim() const { return dim_; }

  // x1..xn, y1..yn, then the generator names.
  std::vector<std::string> coordinate_names() const;
  // Generator names, then the parameter names.
  std::vector<std::string> parameter_ring_names() const;

  bool operator==(const TSVariety&) const = default;

 private:
  DiffField base_;
  std::size_t n_ = 0;
  std::optional<std::vector<MultiPoly>> equations_;
  std::optional<Parametrization> param_;
  int dim_ = 0;
};

enum class Route { Auto, Equations, Parametrization };

// Auto prefers the parametrization when present. Throws Error(Budget) and
// Error(InvalidArgument) when the requested route is unavailable.
int dim_variety(const TSVariety& v, Route route = Route::Auto, const GroebnerBudget& budget = {});
// Dimension of the closure of (Tf)(V).
int image_dim(const TSVariety& v, const QuotientMap& q, Route route = Route::Auto,
              const GroebnerBudget& budget = {});
// Dimension of the closure of one projection of (Tf)(V): the LH-part
// (sum M x) or the H-part (y^M).
int image_dim_part(const TSVariety& v, const QuotientMap& q, bool linear_part, Route route = Route::Auto,
                   const GroebnerBudget& budget = {});

// Saturated row lattices of rank k in Z^n, in HNF with every entry at most
// `bound` in absolute value, sorted lexicographically by row-major entries.
std::vector<QuotientMap> enumerate_quotients(std::size_t n, std::size_t k, int bound);

enum class Projection { Both, Linear, Torus };

struct FreenessVerdict {
  bool free = true;
  bool absolute = false;
  int bound = 0;
  // First character (in enumeration order) whose image is a point, and
  // which projection collapsed.
  std::optional<IntVec> witness;
  Projection collapsed = Projection::Both;
};

// Relative mode: some m with both sum m x and y^m constant on V. Absolute
// mode: the two projections are tested separately.
FreenessVerdict is_free(const TSVariety& v, int bound, bool absolute = false, Exec exec = default_exec(),
                        const GroebnerBudget& budget = {});

enum class RotundMode { Plain, Perfect, Strong };
enum class RotundStatus { RotundUpToBound, NotRotund, PerfectUpToBound, NotPerfect, StrongUpToBound, NotStrong };

const char* rotund_status_name(RotundStatus s);
const char* rotund_mode_name(RotundMode m);

// A failed inequality: image_dim `relation` required.
struct RotundViolation {
  enum class Relation { AtLeast, Greater, Equal };
  QuotientMap map;
  int image_dim = 0;
  int required = 0;
  Relation relation = Relation::AtLeast;
  std::string describe() const;
};

struct RotundityVerdict {
  RotundStatus status = RotundStatus::RotundUpToBound;
  RotundMode mode = RotundMode::Plain;
  int bound = 0;
  int dim = 0;
  // Irreducibility is taken on the caller's word.
  bool irreducible_assumed = true;
  std::size_t maps_checked = 0;
  std::optional<RotundViolation> witness;
  bool negative() const { return witness.has_value(); }
};

// Sweeps quotients by rank 1..n, then lexicographically; the first
// violation is the witness and is recomputed before being returned.
RotundityVerdict is_rotund(const TSVariety& v, int bound, RotundMode mode = RotundMode::Plain,
                           Exec exec = default_exec(), const GroebnerBudget& budget = {});

// Entries of a hyperplane draw lie in [-kHyperplaneBox, kHyperplaneBox].
constexpr long kHyperplaneBox = 65536;

// Coefficients p of sum p_i z_i = 1 over z = (x, y), drawn from the seed.
std::vector<long> hyperplane_coefficients(std::size_t n, std::uint64_t seed);

// V intersected with the drawn hyperplane. Throws Error(DimTooSmall) when
// dim V <= n and Error(Degenerate) when the section does not have
// dimension exactly dim V - 1.
TSVariety intersect_generic_hyperplane(const TSVariety& v, std::uint64_t seed, const GroebnerBudget& budget = {});

// V' in T(Gm^(n+m)): the old equations plus f_i z_i = 1, z_i the new torus
// coordinates, the new linear coordinates unconstrained. Each f_i is a
// polynomial in V's coordinate ring variables. Throws Error(FVanishes).
TSVariety rabinovich(const TSVariety& v, const std::vector<MultiPoly>& fs, const GroebnerBudget& budget = {});

}  // namespace expdiff

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expdiff/cli/expr.hpp"
#include "expdiff/geometry/geometry.hpp"
#include "expdiff/pregeom/pregeom.hpp"
#include "expdiff/weakcit/weakcit.hpp"

namespace expdiff {

// A point of T(Gm^n); the x-part may be absent for points only used on
// the torus side.
struct PointDecl {
  std::string name;
  std::size_t n = 0;
  std::optional<RFVector> x;
  RFVector y;
  bool operator==(const PointDecl&) const = default;

  // Throws Error(InvalidArgument) when x is missing.
  TangentPoint tangent() const;
};

// Equations in x1..xn, y1..yn and the generators, and/or a parametrization.
struct VarietyDecl {
  std::string name;
  std::size_t n = 0;
  std::vector<MultiPoly> equations;
  std::optional<Parametrization> param;
  bool operator==(const VarietyDecl&) const = default;

  TSVariety build(const DiffField& field, const GroebnerBudget& budget = {}) const;
};

// Polynomials in the generators.
struct BaseDecl {
  std::string name;
  std::vector<MultiPoly> elements;
  bool operator==(const BaseDecl&) const = default;
};

struct InputModel {
  DiffField field;
  std::vector<PointDecl> points;
  std::vector<VarietyDecl> varieties;
  std::vector<Substructure> subs;
  std::vector<BaseDecl> bases;
  bool operator==(const InputModel&) const = default;

  // Lookups throw Error(InvalidArgument) naming the missing entry.
  const PointDecl& point(const std::string& name) const;
  const VarietyDecl& variety(const std::string& name) const;
  const Substructure& sub(const std::string& name) const;
  const BaseDecl& base(const std::string& name) const;

  // Every point with an x-part, and every substructure.
  Config config() const;
};

// Throws ParseError with line and column set; field validation failures
// surface as the corresponding Error.
InputModel parse_input(std::string_view text);

// Canonical text that parse_input maps back to an equal model.
std::string format_input(const InputModel& model);

// Text accepted by parse_expression for the same names.
std::string format_expression(const RationalFunction& f, std::span<const std::string> names);

}  // namespace expdiff

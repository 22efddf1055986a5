#pragma once

#include <optional>
#include <vector>

#include "expdiff/geometry/geometry.hpp"

namespace expdiff {

struct SynthesisResult {
  // Base generators followed by the parameters of V.
  DiffField field;
  TangentPoint point;
  // D s_j of the chosen extension.
  RFVector parameter_derivatives;
  // Dimension of the affine space of extensions; 0 means unique.
  std::size_t uniqueness_rank = 0;
  // Parameters with D s_j = 0 in every extension; nonempty means DEGENERATE.
  std::vector<std::size_t> forced_constant;
  // Parameters flagged constant in `field` (forced or not).
  std::vector<std::size_t> constant_parameters;
  std::optional<RotundityVerdict> rotundity;
  bool degenerate() const { return !forced_constant.empty(); }
};

// Extends the single derivation of v.base() to F(s) so that the generic
// point of the parametrized V lies in Gamma. Free directions of the
// solution space are fixed by D s_j = 1. Throws Error(NoExtension),
// Error(NonCommuting) for bases with more than one derivation,
// Error(InvalidArgument) without a parametrization, Error(SoundnessAlarm)
// if the result fails the Gamma check.
SynthesisResult extend_derivation(const TSVariety& v, std::size_t derivation = 0,
                                  std::optional<RotundityVerdict> rotundity = std::nullopt);

}  // namespace expdiff

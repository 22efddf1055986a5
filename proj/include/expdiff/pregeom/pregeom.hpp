#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expdiff/parallel.hpp"
#include "expdiff/schanuel/schanuel.hpp"

namespace expdiff {

struct NamedPoint {
  std::string name;
  TangentPoint point;
  bool operator==(const NamedPoint&) const = default;
};

struct Substructure {
  std::string name;
  std::vector<std::string> generators;
  bool operator==(const Substructure&) const = default;
};

// A finite configuration: one field, Gamma-points in it, and named
// generator subsets. Throws Error(NotInGamma) or Error(InvalidArgument).
class Config {
 public:
  Config() = default;
  Config(DiffField field, std::vector<NamedPoint> points, std::vector<Substructure> subs = {});

  const DiffField& field() const { return field_; }
  const std::vector<NamedPoint>& points() const { return points_; }
  const std::vector<Substructure>& subs() const { return subs_; }
  const Substructure* sub(const std::string& name) const;
  bool operator==(const Config&) const = default;

 private:
  DiffField field_;
  std::vector<NamedPoint> points_;
  std::vector<Substructure> subs_;
};

// Generator subset as a bitmask over field.nonconstant() positions;
// constant generators belong to every substructure.
using SubMask = std::uint32_t;

constexpr std::size_t kMaxPregeomGenerators = 12;

// Predimension table of all generator-subset substructures of a
// configuration: delta(X) = |X| - (rank L_X - rank L_C), where L_X holds
// the integer combinations of all configuration points whose x- and
// y-values lie in Q(X, constants). Throws Error(InvalidArgument) above
// kMaxPregeomGenerators.
class Pregeometry {
 public:
  explicit Pregeometry(const Config& config, Exec exec = default_exec());

  std::size_t size() const { return k_; }
  SubMask full() const { return (SubMask{1} << k_) - 1; }
  const std::vector<std::size_t>& generators() const { return gens_; }

  SubMask mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(SubMask m) const;

  long delta(SubMask x) const { return static_cast<long>(__builtin_popcount(x)) - (rank_[x] - rank_[0]); }
  // rank L_X - rank L_Y.
  long grk(SubMask x, SubMask over = 0) const { return rank_[x] - rank_[over]; }

  // First X (by size, then mask) with delta(X & a) > delta(X).
  std::optional<SubMask> self_sufficiency_violation(SubMask a) const;
  bool is_self_sufficient(SubMask a) const { return !self_sufficiency_violation(a); }
  SubMask hull(SubMask x) const;
  long d(SubMask x) const;
  long d(SubMask x, SubMask over) const { return d(x | over) - d(over); }
  SubMask closure(SubMask y) const;

 private:
  std::size_t k_ = 0;
  std::vector<std::size_t> gens_;
  std::vector<std::string> names_;
  std::vector<long> rank_;
};

struct AmalgamReport {
  Config amalgam;
  long grk_total = 0, grk_left = 0, grk_right = 0, grk_base = 0;
  long delta_total = 0;
  bool right_self_sufficient = false;
  // Renamed generators of the second configuration, old -> new.
  std::vector<std::pair<std::string, std::string>> renamed;
};

// Free amalgam of two configurations over a substructure named `over` in
// the first (empty name: over the constants). Throws Error(NotDisjoint),
// Error(NonCommuting), Error(InvalidArgument).
AmalgamReport free_amalgam(const Config& left, const Config& right, const std::string& over,
                           Exec exec = default_exec());

}  // namespace expdiff

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "expdiff/parallel.hpp"
#include "expdiff/torus/torus.hpp"

namespace expdiff {

// Generator subset, indexed like DiffField::generators(); empty means none.
using GenMask = std::vector<bool>;

struct Witness {
  IntVec m;
  RationalFunction linear;     // sum m_i x_i
  RationalFunction character;  // y^m
};

struct PredimReport {
  std::size_t n = 0;
  std::size_t td = 0;
  std::size_t rk_jac = 0;
  IntLattice relations;
  std::size_t grk = 0;
  long delta = 0;
  std::vector<Witness> witnesses;
};

struct SchanuelVerdict {
  std::size_t n = 0;
  std::size_t td = 0;
  std::size_t rk_jac = 0;
  bool trigger = false;
  IntLattice relations;
  std::optional<Witness> witness;
};

// Relation lattice of the x-part. Over no nonconstant generator:
// {m : D_j(sum m x) = 0 for all j}. Over a subset A: sum m x and y^m both
// lie in Q(A, constants), tested by formal partials outside A.
IntLattice ldim_relations(const DiffField& field, const TangentPoint& p, const GenMask& over = {});

// Throws Error(NotInGamma).
PredimReport predim(const DiffField& field, const TangentPoint& p, const GenMask& over = {});

std::size_t forms_rank(const DiffField& field, const TangentPoint& p);

// Throws Error(NotInGamma) and Error(SoundnessAlarm).
SchanuelVerdict schanuel_check(const DiffField& field, const TangentPoint& p);

// Exact verification of one character; nullopt when either value fails
// is_constant.
std::optional<Witness> verify_witness(const DiffField& field, const TangentPoint& p, const IntVec& m);

// Basis vector of smallest max-norm, ties broken lexicographically.
const IntVec& preferred_vector(const IntLattice& lattice);

struct UspItem {
  std::string family;
  TangentPoint point;
};

struct UspResult {
  std::map<std::string, std::set<IntLattice>> witnesses;
  // Item index and message for items whose check raised.
  std::vector<std::pair<std::size_t, std::string>> errors;
};

UspResult usp_collect(const DiffField& field, const std::vector<UspItem>& batch, Exec exec = default_exec());

}  // namespace expdiff

#include "expdiff/diff/field.hpp"

#include <set>

#include "expdiff/algebra/linalg.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

namespace {

RationalFunction apply_raw(const RFMatrix& derivations, std::size_t der, const RationalFunction& f) {
  RationalFunction acc(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    const auto& dz = derivations[der][i];
    if (dz.is_zero() || !f.involves(i)) continue;
    acc += f.derivative(i) * dz;
  }
  return acc;
}

}  // namespace

CommutingReport check_commuting(const std::vector<Generator>& generators, const RFMatrix& derivations) {
  const std::size_t r = derivations.size();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      for (std::size_t z = 0; z < generators.size(); ++z) {
        auto ab = apply_raw(derivations, a, derivations[b][z]);
        auto ba = apply_raw(derivations, b, derivations[a][z]);
        if (ab != ba) return {false, a, b, z};
      }
  return {};
}

DiffField::DiffField(std::vector<Generator> generators, std::vector<std::string> derivation_names,
                     RFMatrix derivations)
    : generators_(std::move(generators)),
      derivation_names_(std::move(derivation_names)),
      derivations_(std::move(derivations)) {
  const std::size_t k = generators_.size();
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!seen.insert(g.name).second) fail(ErrorCode::InvalidArgument, "duplicate generator '" + g.name + "'");
    names_.push_back(g.name);
  }
  std::set<std::string> dseen;
  for (const auto& d : derivation_names_)
    if (!dseen.insert(d).second) fail(ErrorCode::InvalidArgument, "duplicate derivation '" + d + "'");
  if (derivations_.size() != derivation_names_.size())
    fail(ErrorCode::InvalidArgument, "derivation table size mismatch");
  for (const auto& row : derivations_) {
    if (row.size() != k) fail(ErrorCode::InvalidArgument, "derivation row arity mismatch");
    for (const auto& v : row)
      if (v.nvars() != k) fail(ErrorCode::InvalidArgument, "derivation value over wrong ring");
  }
  for (std::size_t i = 0; i < k; ++i) {
    bool moving = false;
    for (const auto& row : derivations_)
      if (!row[i].is_zero()) moving = true;
    if (generators_[i].constant && moving)
      fail(ErrorCode::InvalidArgument, "constant generator '" + generators_[i].name + "' has nonzero derivative");
    if (!generators_[i].constant && !moving)
      fail(ErrorCode::InvalidArgument,
           "generator '" + generators_[i].name + "' is killed by every derivation; flag it const");
    if (!generators_[i].constant) nonconstant_.push_back(i);
  }
  auto rep = check_commuting(generators_, derivations_);
  if (!rep.commuting)
    fail(ErrorCode::NonCommuting, "derivations " + derivation_names_[rep.a] + " and " + derivation_names_[rep.b] +
                                      " do not commute on " + generators_[rep.generator].name);
}

std::optional<std::size_t> DiffField::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> DiffField::derivation_index(const std::string& name) const {
  for (std::size_t i = 0; i < derivation_names_.size(); ++i)
    if (derivation_names_[i] == name) return i;
  return std::nullopt;
}

RationalFunction DiffField::apply(std::size_t der, const RationalFunction& f) const {
  return apply_raw(derivations_, der, f);
}

bool DiffField::is_constant(const RationalFunction& f) const {
  for (std::size_t j = 0; j < nders(); ++j)
    if (!apply(j, f).is_zero()) return false;
  return true;
}

std::size_t DiffField::jacobian_rank(const RFVector& a) const {
  RFMatrix m;
  for (std::size_t j = 0; j < nders(); ++j) {
    RFVector row;
    for (const auto& f : a) row.push_back(apply(j, f));
    m.push_back(std::move(row));
  }
  return rank(m, a.size(), ngens());
}

std::size_t DiffField::formal_rank(const RFVector& a, const std::vector<bool>& skip) const {
  RFMatrix m;
  for (std::size_t z : nonconstant_) {
    if (!skip.empty() && skip[z]) continue;
    RFVector row;
    for (const auto& f : a) row.push_back(f.derivative(z));
    m.push_back(std::move(row));
  }
  return rank(m, a.size(), ngens());
}

RationalFunction apply_derivation(const DiffField& field, std::size_t der, const RationalFunction& f) {
  return field.apply(der, f);
}

bool is_constant(const DiffField& field, const RationalFunction& f) { return field.is_constant(f); }

std::size_t jacobian_rank(const DiffField& field, const RFVector& a) { return field.jacobian_rank(a); }

}  // namespace expdiff

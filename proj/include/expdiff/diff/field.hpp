#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expdiff/algebra/ratfun.hpp"

namespace expdiff {

struct Generator {
  std::string name;
  bool constant = false;
  bool operator==(const Generator&) const = default;
};

struct CommutingReport {
  bool commuting = true;
  // 0-based derivation pair and generator of the first failure.
  std::size_t a = 0, b = 0, generator = 0;
};

// D_a D_b z == D_b D_a z for all derivation pairs and generators;
// derivations[j][i] is D_j z_i.
CommutingReport check_commuting(const std::vector<Generator>& generators, const RFMatrix& derivations);

// Q(z_1..z_k), purely transcendental, with commuting derivations given on
// generators. Construction validates the presentation and throws
// Error(NonCommuting) / Error(InvalidArgument).
class DiffField {
 public:
  DiffField() = default;
  DiffField(std::vector<Generator> generators, std::vector<std::string> derivation_names,
            RFMatrix derivations);

  std::size_t ngens() const { return generators_.size(); }
  std::size_t nders() const { return derivation_names_.size(); }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<std::string>& gen_names() const { return names_; }
  const std::vector<std::string>& derivation_names() const { return derivation_names_; }
  const RFMatrix& derivations() const { return derivations_; }
  const RationalFunction& derivation_of(std::size_t der, std::size_t gen) const {
    return derivations_[der][gen];
  }

  bool is_constant_generator(std::size_t gen) const { return generators_[gen].constant; }
  const std::vector<std::size_t>& nonconstant() const { return nonconstant_; }
  std::optional<std::size_t> generator_index(const std::string& name) const;
  std::optional<std::size_t> derivation_index(const std::string& name) const;

  RationalFunction zero() const { return RationalFunction(ngens()); }
  RationalFunction one() const { return RationalFunction::constant(ngens(), Q(1)); }
  RationalFunction constant(const Q& c) const { return RationalFunction::constant(ngens(), c); }
  RationalFunction gen(std::size_t i) const { return RationalFunction::variable(ngens(), i); }

  // D_der f by the chain rule over generator values.
  RationalFunction apply(std::size_t der, const RationalFunction& f) const;
  // Exact: D_j f == 0 for every derivation.
  bool is_constant(const RationalFunction& f) const;
  // Rank over F of (D_i a_j).
  std::size_t jacobian_rank(const RFVector& a) const;
  // Rank over F of the formal Jacobian (d a_j / d z) over nonconstant
  // generators not excluded by `skip` (skip may be empty).
  std::size_t formal_rank(const RFVector& a, const std::vector<bool>& skip = {}) const;

  bool operator==(const DiffField&) const = default;

 private:
  std::vector<Generator> generators_;
  std::vector<std::string> names_;
  std::vector<std::string> derivation_names_;
  RFMatrix derivations_;
  std::vector<std::size_t> nonconstant_;
};

RationalFunction apply_derivation(const DiffField& field, std::size_t der, const RationalFunction& f);
bool is_constant(const DiffField& field, const RationalFunction& f);
std::size_t jacobian_rank(const DiffField& field, const RFVector& a);

}  // namespace expdiff

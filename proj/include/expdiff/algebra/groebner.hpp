#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "expdiff/algebra/poly.hpp"

namespace expdiff {

enum class OrderKind { Lex, GrevLex };

// Block monomial order: blocks are consecutive variable ranges compared in
// turn, each by its own kind. A single block is a plain order.
class MonomialOrder {
 public:
  struct Block {
    std::size_t size;
    OrderKind kind;
    bool operator==(const Block&) const = default;
  };

  MonomialOrder() = default;
  explicit MonomialOrder(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  static MonomialOrder lex(std::size_t n) { return MonomialOrder({{n, OrderKind::Lex}}); }
  static MonomialOrder grevlex(std::size_t n) { return MonomialOrder({{n, OrderKind::GrevLex}}); }

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t nvars() const;

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;

  bool operator==(const MonomialOrder&) const = default;

 private:
  std::vector<Block> blocks_;
};

struct GroebnerBudget {
  int max_degree = 40;
  long max_pairs = 200000;
};

// Polynomial ideal with an optional cached reduced Groebner basis.
class Ideal {
 public:
  Ideal() = default;
  Ideal(std::size_t nvars, std::vector<MultiPoly> generators);

  std::size_t nvars() const { return nvars_; }
  const std::vector<MultiPoly>& generators() const { return generators_; }

  bool has_basis() const { return basis_ != nullptr; }
  // Reduced, monic, sorted by increasing leading monomial.
  const std::vector<MultiPoly>& basis() const { return *basis_; }
  const MonomialOrder& order() const { return order_; }

  bool is_unit() const;  // requires has_basis()

 private:
  friend Ideal groebner(const Ideal&, const MonomialOrder&, const GroebnerBudget&);

  std::size_t nvars_ = 0;
  std::vector<MultiPoly> generators_;
  std::shared_ptr<const std::vector<MultiPoly>> basis_;
  MonomialOrder order_;
};

// Buchberger, normal selection strategy, Gebauer-Moeller pair criteria.
// Throws Error(ErrorCode::Budget) naming the exceeded budget.
Ideal groebner(const Ideal& ideal, const MonomialOrder& order, const GroebnerBudget& budget = {});

// Leading monomial of p under order.
Monomial leading_monomial(const MultiPoly& p, const MonomialOrder& order);
// Remainder of p on division by a Groebner basis.
MultiPoly normal_form(const MultiPoly& p, std::span<const MultiPoly> basis, const MonomialOrder& order);

// Krull dimension of V(I) in affine space over the algebraic closure of
// the coefficient field; -1 for the unit ideal.
int ideal_dimension(const Ideal& ideal, const GroebnerBudget& budget = {});

// Dimension counted in the first `nmain` variables only, the remaining
// variables being treated as transcendental parameters of the coefficient
// field: Krull dimension of I extended to Q(params)[main]. Uses a block order
// with the parameters in the last block.
int dimension_over_parameters(const Ideal& ideal, std::size_t nmain, const GroebnerBudget& budget = {});

// Largest set of variables (restricted to `vars`) independent modulo the
// given leading monomials; -1 if some leading monomial restricted to `vars`
// is 1.
int dimension_from_leading(const std::vector<Monomial>& leading, std::span<const std::size_t> vars);

// Elimination ideal I ∩ Q[remaining variables], kept in the same ring.
Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> drop, const GroebnerBudget& budget = {});

// Dimension over Q(params) of the closure of the projection of V(I) onto
// the `keep` variables, where the variables in neither list are parameters.
// One Groebner basis under the block order (drop | keep | params).
int projected_dimension(const Ideal& ideal, std::span<const std::size_t> drop, std::span<const std::size_t> keep,
                        const GroebnerBudget& budget = {});

bool ideal_contains(const Ideal& with_basis, const MultiPoly& p);

}  // namespace expdiff

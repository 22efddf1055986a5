#pragma once

#include "expdiff/algebra/lattice.hpp"
#include "expdiff/diff/field.hpp"

namespace expdiff {

// (x, y) in LS x S for S = Gm^n; every y_i nonzero.
class TangentPoint {
 public:
  TangentPoint() = default;
  TangentPoint(RFVector x, RFVector y);

  std::size_t dim() const { return x_.size(); }
  const RFVector& x() const { return x_; }
  const RFVector& y() const { return y_; }
  bool operator==(const TangentPoint&) const = default;

 private:
  RFVector x_, y_;
};

// Surjection S -> H given by a full-row-rank integer matrix in HNF.
class QuotientMap {
 public:
  QuotientMap() = default;
  // Throws Error(InvalidArgument) unless the rows are independent.
  QuotientMap(IntMatrix rows, std::size_t n);
  static QuotientMap identity(std::size_t n);

  std::size_t rank() const { return rows_.size(); }
  std::size_t source_dim() const { return n_; }
  const IntMatrix& rows() const { return rows_; }
  bool operator==(const QuotientMap&) const = default;

 private:
  IntMatrix rows_;
  std::size_t n_ = 0;
};

// prod y_i^{m_i}.
RationalFunction character_value(const RFVector& y, const IntVec& m, std::size_t nvars);
// sum m_i x_i.
RationalFunction linear_value(const RFVector& x, const IntVec& m, std::size_t nvars);

// result[j][i] = D_j y_i / y_i.
RFMatrix logd(const DiffField& field, const RFVector& y);
bool gamma_member(const DiffField& field, const TangentPoint& p);

TangentPoint tangent_map(const QuotientMap& q, const TangentPoint& p, std::size_t nvars);
TangentPoint group_op(const TangentPoint& p, const TangentPoint& q);
TangentPoint inverse(const TangentPoint& p);
TangentPoint identity_point(std::size_t n, std::size_t nvars);
// Point of S1 x S2.
TangentPoint product_point(const TangentPoint& p, const TangentPoint& q);

// m in the lattice iff sum m x = 0 and y^m = 1: membership of p in TH.
bool in_subgroup_tangent(const TangentPoint& p, const IntLattice& characters, std::size_t nvars);

}  // namespace expdiff

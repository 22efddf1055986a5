#include "expdiff/torus/torus.hpp"

#include "expdiff/error.hpp"

namespace expdiff {

TangentPoint::TangentPoint(RFVector x, RFVector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) fail(ErrorCode::InvalidArgument, "point x and y parts differ in length");
  for (std::size_t i = 0; i < y_.size(); ++i)
    if (y_[i].is_zero()) fail(ErrorCode::InvalidArgument, "y" + std::to_string(i + 1) + " is zero");
}

QuotientMap::QuotientMap(IntMatrix rows, std::size_t n) : n_(n) {
  if (rows.empty()) fail(ErrorCode::InvalidArgument, "quotient map needs at least one row");
  auto h = hermite_normal_form(rows, n);
  if (h.size() != rows.size()) fail(ErrorCode::InvalidArgument, "quotient map rows are dependent");
  rows_ = std::move(h);
}

QuotientMap QuotientMap::identity(std::size_t n) {
  IntMatrix id(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return QuotientMap(std::move(id), n);
}

RationalFunction character_value(const RFVector& y, const IntVec& m, std::size_t nvars) {
  RationalFunction acc = RationalFunction::constant(nvars, Q(1));
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) acc *= y[i].pow(static_cast<int>(m[i]));
  return acc;
}

RationalFunction linear_value(const RFVector& x, const IntVec& m, std::size_t nvars) {
  RationalFunction acc(nvars);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) acc += RationalFunction::constant(nvars, Q(static_cast<long>(m[i]))) * x[i];
  return acc;
}

RFMatrix logd(const DiffField& field, const RFVector& y) {
  RFMatrix out(field.nders());
  for (std::size_t j = 0; j < field.nders(); ++j)
    for (const auto& yi : y) out[j].push_back(field.apply(j, yi) / yi);
  return out;
}

bool gamma_member(const DiffField& field, const TangentPoint& p) {
  for (std::size_t j = 0; j < field.nders(); ++j)
    for (std::size_t i = 0; i < p.dim(); ++i)
      if (field.apply(j, p.x()[i]) * p.y()[i] != field.apply(j, p.y()[i])) return false;
  return true;
}

TangentPoint tangent_map(const QuotientMap& q, const TangentPoint& p, std::size_t nvars) {
  if (q.source_dim() != p.dim()) fail(ErrorCode::InvalidArgument, "quotient map arity mismatch");
  RFVector x, y;
  for (const auto& row : q.rows()) {
    x.push_back(linear_value(p.x(), row, nvars));
    y.push_back(character_value(p.y(), row, nvars));
  }
  return TangentPoint(std::move(x), std::move(y));
}

TangentPoint group_op(const TangentPoint& p, const TangentPoint& q) {
  if (p.dim() != q.dim()) fail(ErrorCode::InvalidArgument, "group operation arity mismatch");
  RFVector x, y;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    x.push_back(p.x()[i] + q.x()[i]);
    y.push_back(p.y()[i] * q.y()[i]);
  }
  return TangentPoint(std::move(x), std::move(y));
}

TangentPoint inverse(const TangentPoint& p) {
  RFVector x, y;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    x.push_back(-p.x()[i]);
    y.push_back(p.y()[i].inverse());
  }
  return TangentPoint(std::move(x), std::move(y));
}

TangentPoint identity_point(std::size_t n, std::size_t nvars) {
  return TangentPoint(RFVector(n, RationalFunction(nvars)), RFVector(n, RationalFunction::constant(nvars, Q(1))));
}

TangentPoint product_point(const TangentPoint& p, const TangentPoint& q) {
  RFVector x = p.x(), y = p.y();
  x.insert(x.end(), q.x().begin(), q.x().end());
  y.insert(y.end(), q.y().begin(), q.y().end());
  return TangentPoint(std::move(x), std::move(y));
}

bool in_subgroup_tangent(const TangentPoint& p, const IntLattice& characters, std::size_t nvars) {
  for (const auto& m : characters.basis()) {
    if (!linear_value(p.x(), m, nvars).is_zero()) return false;
    if (!character_value(p.y(), m, nvars).is_one()) return false;
  }
  return true;
}

}  // namespace expdiff

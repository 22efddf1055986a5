#include "expdiff/schanuel/schanuel.hpp"

#include <algorithm>

#include "expdiff/algebra/linalg.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

namespace {

bool has_nonconstant(const DiffField& field, const GenMask& mask) {
  if (mask.empty()) return false;
  for (std::size_t z : field.nonconstant())
    if (mask[z]) return true;
  return false;
}

RFVector coordinates(const TangentPoint& p) {
  RFVector all = p.x();
  all.insert(all.end(), p.y().begin(), p.y().end());
  return all;
}

void require_gamma(const DiffField& field, const TangentPoint& p) {
  if (!gamma_member(field, p)) fail(ErrorCode::NotInGamma, "point does not satisfy Dx = Dy/y");
}

}  // namespace

IntLattice ldim_relations(const DiffField& field, const TangentPoint& p, const GenMask& over) {
  const std::size_t n = p.dim();
  std::vector<RFVector> columns(n);
  if (!has_nonconstant(field, over)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < field.nders(); ++j) columns[i].push_back(field.apply(j, p.x()[i]));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t z : field.nonconstant())
        if (!over[z]) columns[i].push_back(p.x()[i].derivative(z));
      for (std::size_t z : field.nonconstant())
        if (!over[z]) columns[i].push_back(p.y()[i].derivative(z) / p.y()[i]);
    }
  }
  return lattice_kernel(rational_relation_constraints(columns), n);
}

std::optional<Witness> verify_witness(const DiffField& field, const TangentPoint& p, const IntVec& m) {
  Witness w{m, linear_value(p.x(), m, field.ngens()), character_value(p.y(), m, field.ngens())};
  if (!field.is_constant(w.linear) || !field.is_constant(w.character)) return std::nullopt;
  return w;
}

const IntVec& preferred_vector(const IntLattice& lattice) {
  const auto& basis = lattice.basis();
  return *std::min_element(basis.begin(), basis.end(), [](const IntVec& a, const IntVec& b) {
    long long na = max_norm(a), nb = max_norm(b);
    return na != nb ? na < nb : a < b;
  });
}

PredimReport predim(const DiffField& field, const TangentPoint& p, const GenMask& over) {
  require_gamma(field, p);
  PredimReport r;
  r.n = p.dim();
  RFVector coords = coordinates(p);
  r.td = field.formal_rank(coords, has_nonconstant(field, over) ? over : GenMask{});
  r.rk_jac = field.jacobian_rank(coords);
  r.relations = ldim_relations(field, p, over);
  r.grk = r.n - r.relations.rank();
  r.delta = static_cast<long>(r.td) - static_cast<long>(r.grk);
  IntLattice absolute = has_nonconstant(field, over) ? ldim_relations(field, p) : r.relations;
  for (const auto& m : absolute.basis()) {
    auto w = verify_witness(field, p, m);
    if (!w) fail(ErrorCode::SoundnessAlarm, "relation " + format_vector(m) + " failed constancy verification");
    r.witnesses.push_back(std::move(*w));
  }
  return r;
}

std::size_t forms_rank(const DiffField& field, const TangentPoint& p) {
  RFMatrix m;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    RFVector row;
    for (std::size_t z : field.nonconstant())
      row.push_back(p.y()[i].derivative(z) / p.y()[i] - p.x()[i].derivative(z));
    m.push_back(std::move(row));
  }
  return rank(m, field.nonconstant().size(), field.ngens());
}

SchanuelVerdict schanuel_check(const DiffField& field, const TangentPoint& p) {
  require_gamma(field, p);
  SchanuelVerdict v;
  v.n = p.dim();
  RFVector coords = coordinates(p);
  v.td = field.formal_rank(coords);
  v.rk_jac = field.jacobian_rank(coords);
  v.trigger = static_cast<long>(v.td) - static_cast<long>(v.rk_jac) < static_cast<long>(v.n);
  v.relations = ldim_relations(field, p);
  if (!v.relations.is_zero()) {
    const IntVec& m = preferred_vector(v.relations);
    v.witness = verify_witness(field, p, m);
    if (!v.witness) fail(ErrorCode::SoundnessAlarm, "witness " + format_vector(m) + " failed constancy verification");
  } else if (v.trigger) {
    fail(ErrorCode::SoundnessAlarm, "trigger holds but the relation lattice is zero");
  }
  return v;
}

UspResult usp_collect(const DiffField& field, const std::vector<UspItem>& batch, Exec exec) {
  struct Outcome {
    std::optional<IntLattice> lattice;
    std::optional<std::string> error;
  };
  auto outcomes = parallel_map(batch.size(), exec, [&](std::size_t i) {
    Outcome o;
    try {
      auto v = schanuel_check(field, batch[i].point);
      if (v.witness) o.lattice = v.relations;
    } catch (const Error& e) {
      o.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    return o;
  });
  UspResult r;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    auto& set = r.witnesses[batch[i].family];
    if (outcomes[i].lattice) set.insert(*outcomes[i].lattice);
    if (outcomes[i].error) r.errors.emplace_back(i, *outcomes[i].error);
  }
  return r;
}

}  // namespace expdiff

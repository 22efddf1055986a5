#include "expdiff/pregeom/pregeom.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "expdiff/algebra/linalg.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

Config::Config(DiffField field, std::vector<NamedPoint> points, std::vector<Substructure> subs)
    : field_(std::move(field)), points_(std::move(points)), subs_(std::move(subs)) {
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p.name).second) fail(ErrorCode::InvalidArgument, "duplicate point '" + p.name + "'");
    if (!gamma_member(field_, p.point)) fail(ErrorCode::NotInGamma, "point '" + p.name + "' is not in Gamma");
  }
  seen.clear();
  for (const auto& s : subs_) {
    if (!seen.insert(s.name).second) fail(ErrorCode::InvalidArgument, "duplicate substructure '" + s.name + "'");
    for (const auto& g : s.generators)
      if (!field_.generator_index(g))
        fail(ErrorCode::InvalidArgument, "substructure '" + s.name + "' names unknown generator '" + g + "'");
  }
}

const Substructure* Config::sub(const std::string& name) const {
  for (const auto& s : subs_)
    if (s.name == name) return &s;
  return nullptr;
}

Pregeometry::Pregeometry(const Config& config, Exec exec) {
  const DiffField& f = config.field();
  gens_ = f.nonconstant();
  k_ = gens_.size();
  if (k_ > kMaxPregeomGenerators)
    fail(ErrorCode::InvalidArgument, "configuration has " + std::to_string(k_) + " nonconstant generators (limit " +
                                         std::to_string(kMaxPregeomGenerators) + ")");
  for (std::size_t g : gens_) names_.push_back(f.gen_names()[g]);

  RFVector xs, ys;
  for (const auto& p : config.points()) {
    xs.insert(xs.end(), p.point.x().begin(), p.point.x().end());
    ys.insert(ys.end(), p.point.y().begin(), p.point.y().end());
  }
  const std::size_t ncoord = xs.size();
  // partials[p][i]: (d x_i / d z_p, d y_i / d z_p / y_i).
  std::vector<std::vector<std::pair<RationalFunction, RationalFunction>>> partials(k_);
  for (std::size_t p = 0; p < k_; ++p)
    for (std::size_t i = 0; i < ncoord; ++i)
      partials[p].emplace_back(xs[i].derivative(gens_[p]), ys[i].derivative(gens_[p]) / ys[i]);

  rank_ = parallel_map(std::size_t{1} << k_, exec, [&](std::size_t mask) {
    std::vector<RFVector> columns(ncoord);
    for (std::size_t p = 0; p < k_; ++p) {
      if (mask >> p & 1) continue;
      for (std::size_t i = 0; i < ncoord; ++i) {
        columns[i].push_back(partials[p][i].first);
        columns[i].push_back(partials[p][i].second);
      }
    }
    auto rows = rational_relation_constraints(columns);
    return static_cast<long>(ncoord) - static_cast<long>(hermite_normal_form(rows, ncoord).size());
  });
}

SubMask Pregeometry::mask_of(const std::vector<std::string>& names) const {
  SubMask m = 0;
  for (const auto& n : names) {
    auto it = std::find(names_.begin(), names_.end(), n);
    if (it != names_.end()) m |= SubMask{1} << (it - names_.begin());
  }
  return m;
}

std::vector<std::string> Pregeometry::names_of(SubMask m) const {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < k_; ++p)
    if (m >> p & 1) out.push_back(names_[p]);
  return out;
}

std::optional<SubMask> Pregeometry::self_sufficiency_violation(SubMask a) const {
  std::optional<SubMask> best;
  for (SubMask x = 0; x <= full(); ++x) {
    if (delta(x & a) <= delta(x)) continue;
    if (!best || __builtin_popcount(x) < __builtin_popcount(*best)) best = x;
  }
  return best;
}

long Pregeometry::d(SubMask x) const {
  long best = std::numeric_limits<long>::max();
  const SubMask rest = full() & ~x;
  // Enumerate subsets of the complement.
  for (SubMask s = rest;; s = (s - 1) & rest) {
    best = std::min(best, delta(x | s));
    if (s == 0) break;
  }
  return best;
}

SubMask Pregeometry::hull(SubMask x) const {
  const long target = d(x);
  SubMask acc = full();
  const SubMask rest = full() & ~x;
  for (SubMask s = rest;; s = (s - 1) & rest) {
    if (delta(x | s) == target) acc &= x | s;
    if (s == 0) break;
  }
  return acc;
}

SubMask Pregeometry::closure(SubMask y) const {
  SubMask out = y;
  const long base = d(y);
  for (std::size_t p = 0; p < k_; ++p) {
    SubMask bit = SubMask{1} << p;
    if (!(y & bit) && d(y | bit) == base) out |= bit;
  }
  return out;
}

namespace {

std::string unique_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int k = 2;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!taken.count(c)) return c;
  }
}

}  // namespace

AmalgamReport free_amalgam(const Config& left, const Config& right, const std::string& over, Exec exec) {
  const DiffField& lf = left.field();
  const DiffField& rf = right.field();
  std::vector<std::string> shared;
  if (!over.empty()) {
    const Substructure* s = left.sub(over);
    if (!s) fail(ErrorCode::InvalidArgument, "unknown substructure '" + over + "'");
    shared = s->generators;
  }
  for (const auto& g : shared) {
    auto ri = rf.generator_index(g);
    if (!ri) fail(ErrorCode::InvalidArgument, "shared generator '" + g + "' missing from the second configuration");
    if (rf.is_constant_generator(*ri) != lf.is_constant_generator(*lf.generator_index(g)))
      fail(ErrorCode::InvalidArgument, "shared generator '" + g + "' flagged differently");
  }
  auto is_shared = [&](const std::string& g) { return std::find(shared.begin(), shared.end(), g) != shared.end(); };

  AmalgamReport report;
  std::vector<Generator> gens = lf.generators();
  std::set<std::string> taken(lf.gen_names().begin(), lf.gen_names().end());
  std::vector<int> rmap(rf.ngens());
  for (std::size_t i = 0; i < rf.ngens(); ++i) {
    const auto& g = rf.generators()[i];
    if (is_shared(g.name)) {
      rmap[i] = static_cast<int>(*lf.generator_index(g.name));
      continue;
    }
    std::string name = unique_name(g.name, taken);
    if (name != g.name) report.renamed.emplace_back(g.name, name);
    taken.insert(name);
    rmap[i] = static_cast<int>(gens.size());
    gens.push_back({name, g.constant});
  }
  const std::size_t ne = gens.size();
  std::vector<int> lmap(lf.ngens());
  for (std::size_t i = 0; i < lf.ngens(); ++i) lmap[i] = static_cast<int>(i);
  auto from_left = [&](const RationalFunction& r) { return r.remapped(ne, lmap); };
  auto from_right = [&](const RationalFunction& r) { return r.remapped(ne, rmap); };

  std::vector<std::string> ders = lf.derivation_names();
  for (const auto& d : rf.derivation_names())
    if (std::find(ders.begin(), ders.end(), d) == ders.end()) ders.push_back(d);
  RFMatrix table(ders.size(), RFVector(ne, RationalFunction(ne)));
  for (std::size_t j = 0; j < ders.size(); ++j) {
    auto lj = lf.derivation_index(ders[j]);
    auto rj = rf.derivation_index(ders[j]);
    if (lj)
      for (std::size_t i = 0; i < lf.ngens(); ++i) table[j][i] = from_left(lf.derivation_of(*lj, i));
    if (rj)
      for (std::size_t i = 0; i < rf.ngens(); ++i) {
        auto v = from_right(rf.derivation_of(*rj, i));
        const auto e = static_cast<std::size_t>(rmap[i]);
        if (e < lf.ngens()) {
          if (lj && table[j][e] != v)
            fail(ErrorCode::InvalidArgument, "shared generator '" + gens[e].name + "' has a different derivative under " + ders[j]);
          if (!lj) table[j][e] = v;
        } else {
          table[j][e] = v;
        }
      }
  }
  DiffField ef(gens, ders, table);

  auto lift = [](const TangentPoint& p, const auto& map) {
    RFVector x, y;
    for (const auto& c : p.x()) x.push_back(map(c));
    for (const auto& c : p.y()) y.push_back(map(c));
    return TangentPoint(std::move(x), std::move(y));
  };
  std::vector<NamedPoint> points;
  std::set<std::string> pnames;
  for (const auto& p : left.points()) {
    points.push_back({p.name, lift(p.point, from_left)});
    pnames.insert(p.name);
  }
  for (const auto& p : right.points()) {
    TangentPoint tp = lift(p.point, from_right);
    if (std::any_of(points.begin(), points.end(), [&](const NamedPoint& q) { return q.point == tp; })) continue;
    std::string name = unique_name(p.name, pnames);
    pnames.insert(name);
    points.push_back({name, std::move(tp)});
  }
  std::vector<Substructure> subs = left.subs();
  std::set<std::string> snames;
  for (const auto& s : subs) snames.insert(s.name);
  for (const auto& s : right.subs()) {
    Substructure m{s.name, {}};
    for (const auto& g : s.generators)
      m.generators.push_back(gens[static_cast<std::size_t>(rmap[*rf.generator_index(g)])].name);
    if (std::find(subs.begin(), subs.end(), m) != subs.end()) continue;
    m.name = unique_name(s.name, snames);
    snames.insert(m.name);
    subs.push_back(std::move(m));
  }
  report.amalgam = Config(std::move(ef), std::move(points), std::move(subs));

  Pregeometry pg(report.amalgam, exec);
  std::vector<std::string> right_names;
  for (std::size_t i = 0; i < rf.ngens(); ++i) right_names.push_back(gens[static_cast<std::size_t>(rmap[i])].name);
  const SubMask m1 = pg.mask_of(lf.gen_names());
  const SubMask m2 = pg.mask_of(right_names);
  const SubMask ma = pg.mask_of(shared);
  report.grk_total = pg.grk(pg.full());
  report.grk_left = pg.grk(m1, ma);
  report.grk_right = pg.grk(m2, ma);
  report.grk_base = pg.grk(ma);
  report.delta_total = pg.delta(pg.full());
  report.right_self_sufficient = pg.is_self_sufficient(m2);
  if (report.grk_total != report.grk_left + report.grk_right + report.grk_base)
    fail(ErrorCode::NotDisjoint, "group rank is not additive over the base: " + std::to_string(report.grk_total) +
                                     " != " + std::to_string(report.grk_left) + " + " + std::to_string(report.grk_right) +
                                     " + " + std::to_string(report.grk_base));
  if (!report.right_self_sufficient)
    fail(ErrorCode::NotDisjoint, "second configuration is not self-sufficient in the amalgam");
  return report;
}

}  // namespace expdiff

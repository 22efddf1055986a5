#include "catalogue.hpp"
#include "oracles.hpp"
#include "doctest.h"
#include "expdiff/algebra/linalg.hpp"
#include "expdiff/error.hpp"
#include "expdiff/schanuel/schanuel.hpp"

using namespace expdiff;
using namespace expdiff::testing;

namespace {

GenMask mask_of(const DiffField& f, const std::vector<std::string>& names) {
  GenMask m(f.ngens(), false);
  for (const auto& n : names) m[*f.generator_index(n)] = true;
  return m;
}

}  // namespace

TEST_CASE("ldim_relations examples") {
  auto f = field({"t", "u"}, {{"1", "u"}});
  auto l = ldim_relations(f, point(f, {"t", "2*t"}, {"u", "u^2"}));
  CHECK(l == IntLattice::span(2, {{2, -1}}));
  auto st = field({"s", "t"}, {{"1", "0"}, {"0", "1"}});
  CHECK(ldim_relations(st, point(st, {"s", "t"}, {"1", "1"})).is_zero());
  auto fc = field({"t", "u", "c!"}, {{"1", "u", "0"}});
  CHECK(ldim_relations(fc, point(fc, {"t", "t + c"}, {"u", "u"})) == IntLattice::span(2, {{1, -1}}));
}

TEST_CASE("predim examples") {
  auto f = field({"t", "u"}, {{"1", "u"}});
  auto r = predim(f, point(f, {"t"}, {"u"}));
  CHECK(r.td == 2);
  CHECK(r.grk == 1);
  CHECK(r.delta == 1);
  auto c = predim(f, point(f, {"2/3"}, {"5"}));
  CHECK(c.td == 0);
  CHECK(c.grk == 0);
  CHECK(c.delta == 0);
  auto p = point(f, {"t", "2*t"}, {"u", "u^2"});
  auto r2 = predim(f, p);
  CHECK(r2.td == td_oracle(f, p));
  CHECK(r2.grk == grk_oracle(f, p));
  CHECK(r2.td == 2);
  CHECK(r2.grk == 1);
  CHECK(r2.delta == 1);
  REQUIRE(r2.witnesses.size() == 1);
  CHECK(r2.witnesses[0].m == IntVec{2, -1});
  CHECK_THROWS_AS(predim(f, point(f, {"t"}, {"t"})), Error);
}

TEST_CASE("forms_rank examples") {
  auto f = field({"t", "u"}, {{"1", "u"}});
  CHECK(forms_rank(f, point(f, {"t", "2*t"}, {"u", "u^2"})) == 1);
  CHECK(forms_rank(f, point(f, {"t"}, {"u"})) == 1);
  CHECK(forms_rank(f, point(f, {"1", "0"}, {"3", "1"})) == 0);
}

TEST_CASE("schanuel_check examples") {
  auto f = field({"t", "u"}, {{"1", "u"}});
  auto v = schanuel_check(f, point(f, {"t", "2*t"}, {"u", "u^2"}));
  CHECK(v.trigger);
  REQUIRE(v.witness);
  CHECK(v.witness->m == IntVec{2, -1});
  CHECK(v.witness->linear.is_zero());
  CHECK(v.witness->character.is_one());

  auto v2 = schanuel_check(f, point(f, {"t"}, {"u"}));
  CHECK_FALSE(v2.trigger);
  CHECK(v2.relations.is_zero());
  CHECK_FALSE(v2.witness);

  auto h = hidden_constant_entry(2, 1);
  auto v3 = schanuel_check(h.field, h.point);
  REQUIRE(v3.witness);
  CHECK(v3.witness->m == IntVec{2, -1});
  CHECK(v3.witness->character == rf("u^2/v", h.field.gen_names()));
  CHECK(h.field.is_constant(v3.witness->character));
}

TEST_CASE("preferred_vector picks smallest max-norm then lex") {
  auto l = IntLattice::span(3, {{1, 0, 3}, {0, 1, -1}});
  CHECK(preferred_vector(l) == IntVec{0, 1, -1});
  auto l2 = IntLattice::span(2, {{1, 1}, {0, 2}});
  CHECK(preferred_vector(l2) == IntVec{1, 1});
}

TEST_CASE("usp_collect") {
  auto f = field({"t", "u", "v"}, {{"1", "u", "2*v"}});
  std::vector<UspItem> batch{{"F", point(f, {"t", "2*t"}, {"u", "u^2"})},
                             {"F", point(f, {"t"}, {"u"})},
                             {"F", point(f, {"t", "2*t"}, {"u", "v"})}};
  for (Exec ex : {Exec::Serial, Exec::Parallel}) {
    auto r = usp_collect(f, batch, ex);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses["F"] == std::set<IntLattice>{IntLattice::span(2, {{2, -1}})});
    CHECK(r.errors.empty());
  }
  CHECK(usp_collect(f, {}).witnesses.empty());
  auto quiet = usp_collect(f, {{"G", point(f, {"t"}, {"u"})}});
  CHECK(quiet.witnesses["G"].empty());
  auto bad = usp_collect(f, {{"H", point(f, {"t"}, {"t"})}});
  CHECK(bad.errors.size() == 1);
}

TEST_CASE("catalogue: nonnegativity, forms agreement, witnesses") {
  auto cat = tower_catalogue(60);
  for (const auto& e : cat) {
    INFO(e.label);
    auto r = predim(e.field, e.point);
    CHECK(r.delta >= 0);
    if (r.delta == 0) {
      for (const auto& c : e.point.x()) CHECK(e.field.is_constant(c));
      for (const auto& c : e.point.y()) CHECK(e.field.is_constant(c));
    }
    CHECK(r.grk == e.fresh);
    CHECK(r.grk == grk_oracle(e.field, e.point));
    CHECK(r.td == td_oracle(e.field, e.point));
    CHECK(forms_rank(e.field, e.point) == r.grk);
    auto v = schanuel_check(e.field, e.point);
    CHECK(v.relations.is_zero() == !e.has_relation);
    if (v.witness) {
      CHECK(e.field.is_constant(v.witness->linear));
      CHECK(e.field.is_constant(v.witness->character));
    }
  }
}

TEST_CASE("relative additivity and submodularity on coordinate subsets") {
  auto f = field({"t", "u", "v"}, {{"1", "u", "2*t*v"}});
  // p1 generates Q(t, u); the full point adds (t^2, v).
  auto full = point(f, {"t", "t^2", "2*t + t^2"}, {"u", "v", "u^2*v"});
  auto p1 = point(f, {"t"}, {"u"});
  auto a = mask_of(f, {"t", "u"});
  auto rel = predim(f, full, a);
  CHECK(predim(f, full).delta == rel.delta + predim(f, p1).delta);

  auto sub = [&](unsigned m) {
    RFVector x, y;
    for (std::size_t i = 0; i < 3; ++i)
      if (m >> i & 1) {
        x.push_back(full.x()[i]);
        y.push_back(full.y()[i]);
      }
    return predim(f, TangentPoint(x, y)).delta;
  };
  for (unsigned a1 = 0; a1 < 8; ++a1)
    for (unsigned a2 = 0; a2 < 8; ++a2) CHECK(sub(a1 | a2) + sub(a1 & a2) <= sub(a1) + sub(a2));
}

#include "catalogue.hpp"
#include "doctest.h"
#include "expdiff/error.hpp"

using namespace expdiff;
using namespace expdiff::testing;

TEST_CASE("logd examples") {
  auto fu = field({"u"}, {{"u"}});
  CHECK(logd(fu, rfs(fu, {"u"}))[0][0] == rf("1", {"u"}));
  auto ft = field({"t"}, {{"1"}});
  CHECK(logd(ft, rfs(ft, {"t"}))[0][0] == rf("1/t", {"t"}));
  auto l = logd(fu, rfs(fu, {"u", "u^2"}));
  CHECK(l[0] == rfs(fu, {"1", "2"}));
}

TEST_CASE("gamma_member examples") {
  auto f = field({"t", "u"}, {{"1", "u"}});
  CHECK(gamma_member(f, point(f, {"t"}, {"u"})));
  CHECK_FALSE(gamma_member(f, point(f, {"t"}, {"t"})));
  CHECK(gamma_member(f, point(f, {"t", "2*t"}, {"u", "u^2"})));
}

TEST_CASE("tangent_map, group operation, inverse") {
  auto f = field({"t", "u"}, {{"1", "u"}});
  auto p = point(f, {"t", "2*t"}, {"u", "u^2"});
  auto q1 = tangent_map(QuotientMap({{2, -1}}, 2), p, 2);
  CHECK(q1.x()[0].is_zero());
  CHECK(q1.y()[0].is_one());
  CHECK(tangent_map(QuotientMap::identity(2), p, 2) == p);
  auto q2 = tangent_map(QuotientMap({{1, 1}}, 2), p, 2);
  CHECK(q2 == point(f, {"3*t"}, {"u^3"}));

  auto a = point(f, {"t"}, {"u"});
  CHECK(group_op(a, a) == point(f, {"2*t"}, {"u^2"}));
  CHECK(group_op(p, inverse(p)) == identity_point(2, 2));
  CHECK(gamma_member(f, group_op(a, point(f, {"2*t"}, {"u^2"}))));

  CHECK_THROWS_AS(QuotientMap({{1, 1}, {2, 2}}, 2), Error);
  CHECK_THROWS_AS(TangentPoint(rfs(f, {"t"}), rfs(f, {"0"})), Error);
}

TEST_CASE("axioms on catalogue points") {
  auto cat = tower_catalogue(30, 77);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (const auto& e : cat) {
    const auto& f = e.field;
    const auto& p = e.point;
    REQUIRE(gamma_member(f, p));
    // U2.
    CHECK(gamma_member(f, group_op(p, p)));
    CHECK(gamma_member(f, inverse(p)));
    // U5 under random quotients.
    for (int k = 0; k < 3; ++k) {
      IntMatrix rows{IntVec(p.dim())};
      for (auto& v : rows[0]) v = entry(rng);
      if (max_norm(rows[0]) == 0) rows[0][0] = 1;
      CHECK(gamma_member(f, tangent_map(QuotientMap(rows, p.dim()), p, f.ngens())));
    }
    // U7.
    auto pp = product_point(p, inverse(p));
    CHECK(gamma_member(f, pp));
    // A spoiled coordinate breaks membership in the product.
    RFVector badx = p.x();
    badx[0] += f.gen(0);
    CHECK_FALSE(gamma_member(f, product_point(TangentPoint(badx, p.y()), p)));
  }
}

TEST_CASE("U3 and U4") {
  auto f = field({"t", "u", "c!"}, {{"1", "u", "0"}});
  CHECK(gamma_member(f, point(f, {"c", "2/3"}, {"c^2", "7"})));
  // x = 0: membership forces constant y.
  CHECK(gamma_member(f, point(f, {"0"}, {"c+1"})));
  CHECK_FALSE(gamma_member(f, point(f, {"0"}, {"u"})));
  // y = 1: membership forces constant x.
  CHECK_FALSE(gamma_member(f, point(f, {"t"}, {"1"})));
  CHECK(gamma_member(f, point(f, {"c"}, {"1"})));
}

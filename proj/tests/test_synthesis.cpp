#include "doctest.h"
#include "expdiff/error.hpp"
#include "expdiff/synthesis/synthesis.hpp"
#include "variety_catalogue.hpp"

using namespace expdiff;
using namespace expdiff::testing;

namespace {

DiffField qt() { return field({"t"}, {{"1"}}); }

}  // namespace

TEST_CASE("x = t over Q(t)") {
  auto v = param_variety(qt(), {"s"}, {"t"}, {"s"});
  auto verdict = is_rotund(TSVariety::implicitize(v), 3, RotundMode::Perfect);
  CHECK(verdict.status == RotundStatus::PerfectUpToBound);
  auto r = extend_derivation(v, 0, verdict);
  std::vector<std::string> names{"t", "s"};
  CHECK(r.parameter_derivatives[0] == rf("s", names));
  CHECK(r.uniqueness_rank == 0);
  CHECK_FALSE(r.degenerate());
  CHECK(gamma_member(r.field, r.point));
  REQUIRE(r.rotundity);
  CHECK(r.rotundity->status == RotundStatus::PerfectUpToBound);
}

TEST_CASE("the diagonal x = y is degenerate") {
  auto v = param_variety(qt(), {"s"}, {"s"}, {"s"});
  auto r = extend_derivation(v);
  CHECK(r.parameter_derivatives[0].is_zero());
  CHECK(r.degenerate());
  CHECK(r.forced_constant == std::vector<std::size_t>{0});
  CHECK(r.field.is_constant_generator(1));
  CHECK(gamma_member(r.field, r.point));
  CHECK(is_rotund(TSVariety::implicitize(v), 3, RotundMode::Perfect).status == RotundStatus::PerfectUpToBound);
}

TEST_CASE("x = (t, t^2)") {
  auto v = param_variety(qt(), {"s1", "s2"}, {"t", "t^2"}, {"s1", "s2"});
  auto r = extend_derivation(v);
  std::vector<std::string> names{"t", "s1", "s2"};
  CHECK(r.parameter_derivatives[0] == rf("s1", names));
  CHECK(r.parameter_derivatives[1] == rf("2*t*s2", names));
  CHECK(r.uniqueness_rank == 0);
  CHECK_FALSE(r.degenerate());
  CHECK(gamma_member(r.field, r.point));
}

TEST_CASE("non-unique and failing systems") {
  auto full = param_variety(qt(), {"a", "b"}, {"a"}, {"b"});
  auto r = extend_derivation(full);
  CHECK(r.uniqueness_rank == 1);
  CHECK(gamma_member(r.field, r.point));

  auto f = field({"t", "u"}, {{"1", "u"}});
  // x fixed to t, y fixed to u^2: Dt = 1 but D(u^2)/u^2 = 2.
  auto none = param_variety(f, {"s"}, {"t"}, {"u^2"});
  try {
    extend_derivation(none);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoExtension);
  }

  auto two = field({"s", "t"}, {{"1", "0"}, {"0", "1"}});
  auto pv = param_variety(two, {"a"}, {"s"}, {"a"});
  try {
    extend_derivation(pv);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCommuting);
  }
  CHECK_THROWS_AS(extend_derivation(equations_variety(qt(), 1, {"x1 - t"})), Error);
}

TEST_CASE("synthesized points stay in Gamma under quotients") {
  std::vector<TSVariety> vs{
      param_variety(qt(), {"s1", "s2"}, {"t", "t^2"}, {"s1", "s2"}),
      param_variety(qt(), {"a", "b"}, {"a + t", "b"}, {"a*b", "b^2 + 1"}),
      param_variety(qt(), {"a", "b", "c"}, {"a", "b*t"}, {"c", "a + c"}),
  };
  for (const auto& v : vs) {
    auto r = extend_derivation(v);
    CHECK(gamma_member(r.field, r.point));
    for (std::size_t k = 1; k <= v.n(); ++k)
      for (const auto& q : enumerate_quotients(v.n(), k, 2))
        CHECK(gamma_member(r.field, tangent_map(q, r.point, r.field.ngens())));
  }
}

#include <random>

#include "doctest.h"
#include "expdiff/algebra/groebner.hpp"
#include "expdiff/algebra/lattice.hpp"
#include "expdiff/algebra/linalg.hpp"
#include "expdiff/algebra/polygcd.hpp"
#include "expdiff/error.hpp"
#include "support.hpp"

using namespace expdiff;
using expdiff::testing::poly;
using expdiff::testing::rf;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

MultiPoly random_poly(std::mt19937& rng, std::size_t nvars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> deg(0, maxdeg), coef(-4, 4);
  std::vector<MultiPoly::Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m(nvars);
    for (auto& e : m) e = deg(rng);
    int c = coef(rng);
    if (c == 0) c = 1;
    ts.push_back({m, Q(c)});
  }
  return MultiPoly::from_terms(nvars, ts);
}

// Fraction-free (Bareiss) elimination over polynomials; returns one kernel
// vector per free column, entries polynomials. Independent of the
// rational-function Gauss-Jordan path.
std::vector<std::vector<MultiPoly>> bareiss_kernel(std::vector<std::vector<MultiPoly>> a, std::size_t ncols) {
  std::size_t nv = a.empty() ? 0 : a[0][0].nvars();
  std::vector<std::size_t> piv;
  MultiPoly prev = MultiPoly::constant(nv, Q(1));
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      for (std::size_t k = 0; k < ncols; ++k) {
        if (k == c) continue;
        a[i][k] = a[r][c] * a[i][k] - a[i][c] * a[r][k];
      }
      a[i][c] = MultiPoly(nv);
    }
    piv.push_back(c);
    ++r;
    (void)prev;
  }
  std::vector<std::vector<MultiPoly>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    // Common multiple of pivots keeps entries polynomial.
    MultiPoly scale = MultiPoly::constant(nv, Q(1));
    for (std::size_t i = 0; i < piv.size(); ++i) scale = scale * a[i][piv[i]];
    std::vector<MultiPoly> v(ncols, MultiPoly(nv));
    v[f] = scale;
    for (std::size_t i = 0; i < piv.size(); ++i)
      v[piv[i]] = -exact_divide(scale * a[i][f], a[i][piv[i]]);
    out.push_back(v);
  }
  return out;
}

bool proportional(const RFVector& a, const std::vector<MultiPoly>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] * RationalFunction(b[j]) != a[j] * RationalFunction(b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("polynomial arithmetic and gcd") {
  auto a = poly("(x + y)*(x - y)", XY);
  auto b = poly("(x + y)^2", XY);
  CHECK(gcd(a, b) == poly("x + y", XY));
  CHECK(gcd(poly("x^2*y", XY), poly("x*y^3 + x^2", XY)) == poly("x", XY));
  CHECK(gcd(poly("3", XY), a).is_one());
  CHECK(exact_divide(a, poly("x - y", XY)) == poly("x + y", XY));
  CHECK_FALSE(try_divide(a, poly("x + 2", XY)).has_value());

  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_poly(rng, 3, 3, 2);
    auto p = random_poly(rng, 3, 3, 2);
    auto q = random_poly(rng, 3, 3, 2);
    if (g.is_zero() || p.is_zero() || q.is_zero()) continue;
    auto h = gcd(g * p, g * q);
    CHECK(try_divide(g * p, h).has_value());
    CHECK(try_divide(g * q, h).has_value());
    CHECK(try_divide(h, g.monic()).has_value());
  }
}

TEST_CASE("rational functions are canonical") {
  auto f = rf("(x^2 - 1)/(2*x - 2)", XY);
  CHECK(f == rf("x/2 + 1/2", XY));
  CHECK(rf("1/x + 1/y", XY) == rf("(x + y)/(x*y)", XY));
  CHECK(rf("x/(x*y)", XY).den() == poly("y", XY));
  CHECK((rf("x/y", XY) - rf("x/y", XY)).is_zero());
  CHECK(rf("y/x", XY).derivative(0) == rf("-y/x^2", XY));
  std::vector<std::string> names{"x", "y"};
  auto g = rf("(3*x^2 - y)/(2*y + x)", XY);
  CHECK(parse_expression(g.to_string(names), names) == g);
}

TEST_CASE("groebner examples") {
  std::vector<std::string> X{"x"};
  Ideal i1(1, {poly("x^2 - 1", X), poly("x - 1", X)});
  auto g1 = groebner(i1, MonomialOrder::lex(1));
  REQUIRE(g1.basis().size() == 1);
  CHECK(g1.basis()[0] == poly("x - 1", X));

  auto g2 = groebner(Ideal(1, {poly("x", X)}), MonomialOrder::lex(1));
  REQUIRE(g2.basis().size() == 1);
  CHECK(g2.basis()[0] == poly("x", X));

  auto g3 = groebner(Ideal(2, {poly("x*y - 1", XY), poly("x^2", XY)}), MonomialOrder::grevlex(2));
  CHECK(g3.is_unit());
}

TEST_CASE("ideal dimension examples") {
  CHECK(ideal_dimension(Ideal(2, {})) == 2);
  CHECK(ideal_dimension(Ideal(2, {poly("x - y", XY)})) == 1);
  CHECK(ideal_dimension(Ideal(2, {poly("1", XY)})) == -1);
  CHECK(ideal_dimension(Ideal(3, {poly("x*y", XYZ), poly("x*z", XYZ)})) == 2);
  CHECK(ideal_dimension(Ideal(3, {poly("x - y^2", XYZ), poly("z - x*y", XYZ)})) == 1);
}

TEST_CASE("eliminate examples") {
  std::vector<std::size_t> dropx{0};
  auto e1 = eliminate(Ideal(2, {poly("y - x^2", XY)}), dropx);
  CHECK(e1.generators().empty());
  auto e2 = eliminate(Ideal(2, {poly("x - 1", XY), poly("y - x", XY)}), dropx);
  REQUIRE(e2.generators().size() == 1);
  CHECK(e2.generators()[0] == poly("y - 1", XY));
  auto e3 = eliminate(Ideal(2, {poly("x*y - 1", XY)}), dropx);
  CHECK(e3.generators().empty());
}

TEST_CASE("budget exceeded is an error naming the budget") {
  std::vector<std::string> X{"x"};
  GroebnerBudget tight{3, 1000};
  try {
    (void)groebner(Ideal(1, {poly("x^5 - 1", X)}), MonomialOrder::lex(1), tight);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Budget);
    CHECK(std::string(e.what()).find("max_degree") != std::string::npos);
  }
  GroebnerBudget few_pairs{40, 0};
  CHECK_THROWS_AS((void)groebner(Ideal(2, {poly("x^2 - y", XY), poly("x*y - 1", XY)}),
                                  MonomialOrder::grevlex(2), few_pairs),
                  Error);
}

TEST_CASE("random ideals: mutual membership and monotone dimension") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<MultiPoly> gens;
    int ng = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < ng; ++k) gens.push_back(random_poly(rng, 3, 3, 2));
    Ideal ideal(3, gens);
    auto gb = groebner(ideal, MonomialOrder::grevlex(3));
    for (const auto& g : gens) CHECK(ideal_contains(gb, g));
    // Basis elements lie in the generator ideal: reduce against a basis
    // computed under a different order.
    auto other = groebner(ideal, MonomialOrder::lex(3));
    for (const auto& b : gb.basis()) CHECK(ideal_contains(other, b));

    int d = ideal_dimension(ideal);
    CHECK(d <= 3);
    gens.push_back(random_poly(rng, 3, 2, 2));
    CHECK(ideal_dimension(Ideal(3, gens)) <= d);
  }
}

TEST_CASE("lattice kernel examples against brute force") {
  // Brute-force oracle: all kernel vectors in a box lie in the lattice and
  // every basis vector is in the kernel.
  auto brute = [](const IntMatrix& m, std::size_t n, int box) {
    IntMatrix found;
    IntVec v(n, -box);
    for (;;) {
      bool zero_row = true;
      for (const auto& row : m) {
        long long s = 0;
        for (std::size_t i = 0; i < n; ++i) s += row[i] * v[i];
        if (s != 0) zero_row = false;
      }
      if (zero_row) found.push_back(v);
      std::size_t k = 0;
      while (k < n && v[k] == box) v[k++] = -box;
      if (k == n) break;
      ++v[k];
    }
    return found;
  };

  IntMatrix m1{{1, 1, -1}};
  auto l1 = lattice_kernel(m1, 3);
  CHECK(l1.basis() == IntMatrix{{1, 0, 1}, {0, 1, 1}});
  for (const auto& v : brute(m1, 3, 3)) CHECK(l1.contains(v));
  CHECK(IntLattice::span(3, brute(m1, 3, 2)) == l1);

  IntMatrix id{{1, 0}, {0, 1}};
  CHECK(lattice_kernel(id, 2).is_zero());

  IntMatrix m3{{2, 4}};
  auto l3 = lattice_kernel(m3, 2);
  CHECK(l3.basis() == IntMatrix{{2, -1}});
  CHECK(gcd_of(l3.basis()[0]) == 1);
  CHECK(IntLattice::span(2, brute(m3, 2, 4)) == l3);
}

TEST_CASE("lattice kernel invariants on random matrices") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng() % 2, cols = 2 + rng() % 3;
    IntMatrix m(rows, IntVec(cols));
    for (auto& r : m)
      for (auto& x : r) x = e(rng);
    auto l = lattice_kernel(m, cols);
    CHECK(l.is_saturated());
    for (const auto& b : l.basis()) {
      CHECK(gcd_of(b) == 1);
      for (const auto& r : m) {
        long long s = 0;
        for (std::size_t i = 0; i < cols; ++i) s += r[i] * b[i];
        CHECK(s == 0);
      }
    }
  }
  // Saturation of 2Z is Z.
  auto two = IntLattice::span(1, {{2}});
  CHECK_FALSE(two.is_saturated());
  CHECK(two.saturation() == IntLattice::full(1));
}

TEST_CASE("nullspace over the rational-function field") {
  std::vector<std::string> T{"t"};
  auto one = RationalFunction::constant(1, Q(1));
  auto two = RationalFunction::constant(1, Q(2));
  auto ns = nullspace_over_field({{one, two}}, 2, 1);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == RFVector{RationalFunction::constant(1, Q(-2)), one});

  auto zero = RationalFunction(1);
  CHECK(nullspace_over_field({{one, zero}, {zero, one}}, 2, 1).empty());

  RFMatrix tt{{rf("t", T), rf("t^2", T)}};
  auto ns2 = nullspace_over_field(tt, 2, 1);
  REQUIRE(ns2.size() == 1);
  CHECK(ns2[0] == RFVector{rf("-t", T), one});
  auto oracle = bareiss_kernel({{poly("t", T), poly("t^2", T)}}, 2);
  REQUIRE(oracle.size() == 1);
  CHECK(proportional(ns2[0], oracle[0]));
}

TEST_CASE("nullspace annihilates and rank-nullity holds") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 1 + rng() % 3, cols = 2 + rng() % 3;
    RFMatrix m(rows);
    std::vector<std::vector<MultiPoly>> pm(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        auto p = random_poly(rng, 2, 2, 1);
        pm[i].push_back(p);
        m[i].push_back(RationalFunction(p));
      }
    if (trial % 3 == 0) m.push_back(m[0]), pm.push_back(pm[0]);
    auto ns = nullspace_over_field(m, cols, 2);
    CHECK(rank(m, cols, 2) + ns.size() == cols);
    for (const auto& v : ns)
      for (const auto& row : m) {
        RationalFunction s(2);
        for (std::size_t j = 0; j < cols; ++j) s += row[j] * v[j];
        CHECK(s.is_zero());
      }
    CHECK(bareiss_kernel(pm, cols).size() == ns.size());
  }
}

TEST_CASE("rational relation constraints") {
  std::vector<std::string> T{"t"};
  // 2*t - 2*t = 0 and t + (t + 1) - (2t + 1) = 0.
  std::vector<RFVector> cols{{rf("t", T)}, {rf("2*t", T)}};
  auto c = rational_relation_constraints(cols);
  auto l = lattice_kernel(c, 2);
  CHECK(l.basis() == IntMatrix{{2, -1}});
  std::vector<RFVector> cols2{{rf("1/t", T)}, {rf("1/(t+1)", T)}, {rf("1/(t^2+t)", T)}};
  CHECK(lattice_kernel(rational_relation_constraints(cols2), 3).basis() == IntMatrix{{1, -1, -1}});
}

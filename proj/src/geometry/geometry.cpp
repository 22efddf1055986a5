#include "expdiff/geometry/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "expdiff/algebra/linalg.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

namespace {

// Index map sending the variety ring [x, y, gens] into a ring where x and y
// keep their places and the generators start at `gens_at`.
std::vector<int> coords_into(std::size_t n, std::size_t k, std::size_t gens_at) {
  std::vector<int> map(2 * n + k);
  for (std::size_t i = 0; i < 2 * n; ++i) map[i] = static_cast<int>(i);
  for (std::size_t g = 0; g < k; ++g) map[2 * n + g] = static_cast<int>(gens_at + g);
  return map;
}

// The equations together with y_i * yinv_i = 1 in [x, y, yinv, extra, gens].
std::vector<MultiPoly> saturated(std::size_t n, std::size_t k, std::size_t extra,
                                 const std::vector<MultiPoly>& eqs) {
  const std::size_t total = 3 * n + extra + k;
  auto map = coords_into(n, k, 3 * n + extra);
  std::vector<MultiPoly> out;
  for (const auto& e : eqs) out.push_back(e.remapped(total, map));
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(MultiPoly::variable(total, n + i) * MultiPoly::variable(total, 2 * n + i) -
                  MultiPoly::constant(total, Q(1)));
  return out;
}

int equation_dim(std::size_t n, std::size_t k, const std::vector<MultiPoly>& eqs, const GroebnerBudget& budget) {
  Ideal ideal(3 * n + k, saturated(n, k, 0, eqs));
  std::vector<std::size_t> drop, keep;
  for (std::size_t i = 0; i < n; ++i) drop.push_back(2 * n + i);
  for (std::size_t i = 0; i < 2 * n; ++i) keep.push_back(i);
  return projected_dimension(ideal, drop, keep, budget);
}

// Jacobian rows d/ds of the parametrization in the parameter ring.
struct ParamJacobian {
  RFMatrix linear;  // d x_i / d s_j
  RFMatrix torus;   // (d y_i / d s_j) / y_i
};

ParamJacobian param_jacobian(const TSVariety& v) {
  const auto& p = v.parametrization();
  const std::size_t k = v.base().ngens();
  ParamJacobian j;
  for (std::size_t i = 0; i < v.n(); ++i) {
    RFVector lx, ly;
    for (std::size_t s = 0; s < p.params.size(); ++s) {
      lx.push_back(p.x[i].derivative(k + s));
      ly.push_back(p.y[i].derivative(k + s) / p.y[i]);
    }
    j.linear.push_back(std::move(lx));
    j.torus.push_back(std::move(ly));
  }
  return j;
}

RFVector combine(const RFMatrix& rows, const IntVec& m, std::size_t ncols, std::size_t nvars) {
  RFVector out(ncols, RationalFunction(nvars));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (m[i] == 0) continue;
    auto c = RationalFunction::constant(nvars, Q(Z(static_cast<long>(m[i]))));
    for (std::size_t s = 0; s < ncols; ++s) out[s] += c * rows[i][s];
  }
  return out;
}

int param_image_dim(const TSVariety& v, const QuotientMap& q, bool with_linear, bool with_torus) {
  const auto j = param_jacobian(v);
  const std::size_t d = v.parametrization().params.size();
  const std::size_t nv = v.base().ngens() + d;
  RFMatrix m;
  for (const auto& row : q.rows()) {
    if (with_linear) m.push_back(combine(j.linear, row, d, nv));
    if (with_torus) m.push_back(combine(j.torus, row, d, nv));
  }
  return static_cast<int>(rank(m, d, nv));
}

int equation_image_dim(const TSVariety& v, const QuotientMap& q, bool with_linear, bool with_torus,
                       const GroebnerBudget& budget) {
  const std::size_t n = v.n(), k = v.base().ngens(), r = q.rank();
  const std::size_t nu = with_linear ? r : 0, nw = with_torus ? r : 0;
  const std::size_t total = 3 * n + nu + nw + k;
  auto gens = saturated(n, k, nu + nw, v.equations());
  for (std::size_t row = 0; row < r; ++row) {
    const IntVec& m = q.rows()[row];
    if (with_linear) {
      MultiPoly e = MultiPoly::variable(total, 3 * n + row);
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] != 0) e -= MultiPoly::variable(total, i) * Q(Z(static_cast<long>(m[i])));
      gens.push_back(std::move(e));
    }
    if (with_torus) {
      Monomial mono(total, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] > 0) mono[n + i] = static_cast<int>(m[i]);
        if (m[i] < 0) mono[2 * n + i] = static_cast<int>(-m[i]);
      }
      gens.push_back(MultiPoly::variable(total, 3 * n + nu + row) - MultiPoly::monomial(total, mono, Q(1)));
    }
  }
  std::vector<std::size_t> drop(3 * n), keep(nu + nw);
  std::iota(drop.begin(), drop.end(), 0);
  std::iota(keep.begin(), keep.end(), 3 * n);
  return projected_dimension(Ideal(total, gens), drop, keep, budget);
}

Route resolve(const TSVariety& v, Route route) {
  if (route == Route::Auto) return v.has_parametrization() ? Route::Parametrization : Route::Equations;
  if (route == Route::Parametrization && !v.has_parametrization())
    fail(ErrorCode::InvalidArgument, "variety has no parametrization");
  if (route == Route::Equations && !v.has_equations()) fail(ErrorCode::InvalidArgument, "variety has no equations");
  return route;
}

bool is_identity(const QuotientMap& q) { return q == QuotientMap::identity(q.source_dim()); }

int image_dim_impl(const TSVariety& v, const QuotientMap& q, bool with_linear, bool with_torus, Route route,
                   const GroebnerBudget& budget) {
  if (q.source_dim() != v.n()) fail(ErrorCode::InvalidArgument, "quotient map arity does not match the variety");
  if (with_linear && with_torus && is_identity(q)) return dim_variety(v, route, budget);
  if (resolve(v, route) == Route::Parametrization) return param_image_dim(v, q, with_linear, with_torus);
  return equation_image_dim(v, q, with_linear, with_torus, budget);
}

}  // namespace

TSVariety TSVariety::from_equations(DiffField base, std::size_t n, std::vector<MultiPoly> equations,
                                    const GroebnerBudget& budget) {
  const std::size_t nv = 2 * n + base.ngens();
  for (const auto& e : equations)
    if (e.nvars() != nv) fail(ErrorCode::InvalidArgument, "equation arity does not match 2n plus the generators");
  TSVariety v;
  v.n_ = n;
  v.dim_ = equation_dim(n, base.ngens(), equations, budget);
  if (v.dim_ < 0) fail(ErrorCode::InvalidArgument, "the equations define the empty variety");
  v.base_ = std::move(base);
  v.equations_ = std::move(equations);
  return v;
}

TSVariety TSVariety::from_parametrization(DiffField base, Parametrization param) {
  const std::size_t n = param.x.size();
  if (param.y.size() != n) fail(ErrorCode::InvalidArgument, "parametrization x and y lengths differ");
  const std::size_t nv = base.ngens() + param.params.size();
  for (const auto* part : {&param.x, &param.y})
    for (const auto& c : *part)
      if (c.nvars() != nv) fail(ErrorCode::InvalidArgument, "parametrization component has the wrong arity");
  for (const auto& c : param.y)
    if (c.is_zero()) fail(ErrorCode::InvalidArgument, "parametrization y-component is zero");
  TSVariety v;
  v.n_ = n;
  v.base_ = std::move(base);
  v.param_ = std::move(param);
  v.dim_ = param_image_dim(v, QuotientMap::identity(n), true, true);
  return v;
}

TSVariety TSVariety::from_both(DiffField base, std::size_t n, std::vector<MultiPoly> equations, Parametrization param,
                               const GroebnerBudget& budget) {
  TSVariety v = from_parametrization(base, std::move(param));
  TSVariety e = from_equations(std::move(base), n, std::move(equations), budget);
  if (v.n_ != e.n_ || v.dim_ != e.dim_)
    fail(ErrorCode::InvalidArgument, "equations and parametrization disagree on dimension");
  v.equations_ = std::move(e.equations_);
  return v;
}

TSVariety TSVariety::implicitize(const TSVariety& v, const GroebnerBudget& budget) {
  if (!v.has_parametrization() || v.has_equations()) return v;
  const auto& p = v.parametrization();
  const std::size_t n = v.n(), k = v.base().ngens(), d = p.params.size();
  // Ring [s, w, x, y, gens].
  const std::size_t total = d + 1 + 2 * n + k;
  std::vector<int> from_param(k + d);
  for (std::size_t g = 0; g < k; ++g) from_param[g] = static_cast<int>(d + 1 + 2 * n + g);
  for (std::size_t s = 0; s < d; ++s) from_param[k + s] = static_cast<int>(s);
  std::vector<MultiPoly> gens;
  MultiPoly nonzero = MultiPoly::constant(total, Q(1));
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const RationalFunction& c = i < n ? p.x[i] : p.y[i - n];
    MultiPoly num = c.num().remapped(total, from_param), den = c.den().remapped(total, from_param);
    gens.push_back(den * MultiPoly::variable(total, d + 1 + i) - num);
    nonzero *= den;
    if (i >= n) nonzero *= num;
  }
  gens.push_back(MultiPoly::variable(total, d) * nonzero - MultiPoly::constant(total, Q(1)));
  std::vector<std::size_t> drop(d + 1);
  std::iota(drop.begin(), drop.end(), 0);
  Ideal elim = eliminate(Ideal(total, gens), drop, budget);
  std::vector<int> back(total, -1);
  for (std::size_t i = 0; i < 2 * n + k; ++i) back[d + 1 + i] = static_cast<int>(i);
  std::vector<MultiPoly> eqs;
  for (const auto& g : elim.generators()) eqs.push_back(g.remapped(2 * n + k, back));
  TSVariety out = v;
  out.equations_ = std::move(eqs);
  return out;
}

std::vector<std::string> TSVariety::coordinate_names() const {
  std::vector<std::string> out;
  for (const char* part : {"x", "y"})
    for (std::size_t i = 0; i < n_; ++i) out.push_back(part + std::to_string(i + 1));
  for (const auto& g : base_.gen_names()) out.push_back(g);
  return out;
}

std::vector<std::string> TSVariety::parameter_ring_names() const {
  std::vector<std::string> out = base_.gen_names();
  if (param_) out.insert(out.end(), param_->params.begin(), param_->params.end());
  return out;
}

int dim_variety(const TSVariety& v, Route route, const GroebnerBudget& budget) {
  if (resolve(v, route) == Route::Parametrization)
    return param_image_dim(v, QuotientMap::identity(v.n()), true, true);
  return equation_dim(v.n(), v.base().ngens(), v.equations(), budget);
}

int image_dim(const TSVariety& v, const QuotientMap& q, Route route, const GroebnerBudget& budget) {
  return image_dim_impl(v, q, true, true, route, budget);
}

int image_dim_part(const TSVariety& v, const QuotientMap& q, bool linear_part, Route route,
                   const GroebnerBudget& budget) {
  return image_dim_impl(v, q, linear_part, !linear_part, route, budget);
}

std::vector<QuotientMap> enumerate_quotients(std::size_t n, std::size_t k, int bound) {
  std::vector<QuotientMap> out;
  if (k == 0 || k > n || bound < 1) return out;
  const long long nb = bound;
  std::vector<std::size_t> pivots(k);
  IntMatrix rows(k, IntVec(n, 0));
  // Fill entry (r, c) for r, c in row-major order.
  auto fill = [&](auto&& self, std::size_t r, std::size_t c) -> void {
    if (r == k) {
      // Above-pivot entries were enumerated up to the bound; reduce them.
      for (std::size_t r2 = 1; r2 < k; ++r2)
        for (std::size_t above = 0; above < r2; ++above)
          if (rows[above][pivots[r2]] >= rows[r2][pivots[r2]]) return;
      auto lat = IntLattice::span(n, rows);
      if (lat.rank() == k && lat.is_saturated()) out.emplace_back(rows, n);
      return;
    }
    if (c == n) return self(self, r + 1, 0);
    auto next = [&] { self(self, r, c + 1); };
    if (c < pivots[r]) {
      rows[r][c] = 0;
      return next();
    }
    if (c == pivots[r]) {
      for (long long p = 1; p <= nb; ++p) {
        rows[r][c] = p;
        next();
      }
      return;
    }
    auto later = std::find(pivots.begin() + static_cast<long>(r) + 1, pivots.end(), c);
    if (later != pivots.end()) {
      // Above a later pivot: reduced into [0, pivot), known only once that
      // pivot is chosen, so enumerate the largest range and filter below.
      for (long long e = 0; e < nb; ++e) {
        rows[r][c] = e;
        next();
      }
      return;
    }
    for (long long e = -nb; e <= nb; ++e) {
      rows[r][c] = e;
      next();
    }
  };
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + static_cast<long>(k), true);
  do {
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (choose[c]) pivots[r++] = c;
    fill(fill, 0, 0);
  } while (std::prev_permutation(choose.begin(), choose.end()));
  std::sort(out.begin(), out.end(), [](const QuotientMap& a, const QuotientMap& b) { return a.rows() < b.rows(); });
  return out;
}

FreenessVerdict is_free(const TSVariety& v, int bound, bool absolute, Exec exec, const GroebnerBudget& budget) {
  FreenessVerdict verdict;
  verdict.absolute = absolute;
  verdict.bound = bound;
  const auto maps = enumerate_quotients(v.n(), 1, bound);
  auto collapsed = [&](const QuotientMap& q) {
    if (!absolute) return image_dim(v, q, Route::Auto, budget) == 0 ? Projection::Both : Projection::Linear;
    bool torus = image_dim_part(v, q, false, Route::Auto, budget) == 0;
    bool linear = image_dim_part(v, q, true, Route::Auto, budget) == 0;
    if (torus && linear) return Projection::Both;
    if (torus) return Projection::Torus;
    return linear ? Projection::Linear : Projection::Both;
  };
  auto hit = find_first(maps.size(), exec, [&](std::size_t i) {
    if (!absolute) return image_dim(v, maps[i], Route::Auto, budget) == 0;
    return image_dim_part(v, maps[i], false, Route::Auto, budget) == 0 ||
           image_dim_part(v, maps[i], true, Route::Auto, budget) == 0;
  });
  if (hit) {
    verdict.free = false;
    verdict.witness = maps[*hit].rows()[0];
    verdict.collapsed = collapsed(maps[*hit]);
  }
  return verdict;
}

const char* rotund_status_name(RotundStatus s) {
  switch (s) {
    case RotundStatus::RotundUpToBound: return "ROTUND_UP_TO_BOUND";
    case RotundStatus::NotRotund: return "NOT_ROTUND";
    case RotundStatus::PerfectUpToBound: return "PERFECT_UP_TO_BOUND";
    case RotundStatus::NotPerfect: return "NOT_PERFECT";
    case RotundStatus::StrongUpToBound: return "STRONG_UP_TO_BOUND";
    case RotundStatus::NotStrong: return "NOT_STRONG";
  }
  return "?";
}

const char* rotund_mode_name(RotundMode m) {
  switch (m) {
    case RotundMode::Plain: return "plain";
    case RotundMode::Perfect: return "perfect";
    case RotundMode::Strong: return "strong";
  }
  return "?";
}

std::string RotundViolation::describe() const {
  const std::string lhs = std::to_string(image_dim), rhs = std::to_string(required);
  switch (relation) {
    case Relation::AtLeast: return "dim Tf(V) = " + lhs + " < " + rhs;
    case Relation::Greater: return "dim Tf(V) = " + lhs + " <= " + rhs;
    case Relation::Equal: return "dim V = " + lhs + " != " + rhs;
  }
  return "";
}

RotundityVerdict is_rotund(const TSVariety& v, int bound, RotundMode mode, Exec exec, const GroebnerBudget& budget) {
  RotundityVerdict verdict;
  verdict.mode = mode;
  verdict.bound = bound;
  verdict.dim = v.dim();
  const int n = static_cast<int>(v.n());
  const RotundStatus ok = mode == RotundMode::Plain    ? RotundStatus::RotundUpToBound
                          : mode == RotundMode::Strong ? RotundStatus::StrongUpToBound
                                                       : RotundStatus::PerfectUpToBound;
  const RotundStatus bad = mode == RotundMode::Plain    ? RotundStatus::NotRotund
                           : mode == RotundMode::Strong ? RotundStatus::NotStrong
                                                        : RotundStatus::NotPerfect;
  verdict.status = ok;
  using Rel = RotundViolation::Relation;
  if (mode == RotundMode::Perfect && v.dim() != n) {
    verdict.status = bad;
    verdict.witness = RotundViolation{QuotientMap::identity(v.n()), v.dim(), n, Rel::Equal};
    return verdict;
  }

  std::vector<QuotientMap> maps;
  for (std::size_t k = 1; k <= v.n(); ++k) {
    auto level = enumerate_quotients(v.n(), k, bound);
    if (k == v.n() && level.empty()) level.push_back(QuotientMap::identity(v.n()));
    maps.insert(maps.end(), level.begin(), level.end());
  }
  auto requirement = [&](const QuotientMap& q) -> std::pair<int, Rel> {
    const int k = static_cast<int>(q.rank());
    if (mode == RotundMode::Strong) return {k + 1, Rel::AtLeast};
    if (mode == RotundMode::Perfect && k < n) return {k, Rel::Greater};
    return {k, Rel::AtLeast};
  };
  auto violates = [&](const QuotientMap& q, int dim) {
    auto [req, rel] = requirement(q);
    return rel == Rel::Greater ? dim <= req : dim < req;
  };
  auto hit = find_first(maps.size(), exec,
                        [&](std::size_t i) { return violates(maps[i], image_dim(v, maps[i], Route::Auto, budget)); });
  verdict.maps_checked = hit ? *hit + 1 : maps.size();
  if (!hit) return verdict;

  const QuotientMap& q = maps[*hit];
  // Recompute, through the other presentation when there is one.
  Route again = Route::Auto;
  if (v.has_equations() && v.has_parametrization()) again = Route::Equations;
  const int dim = image_dim(v, q, again, budget);
  if (!violates(q, dim))
    fail(ErrorCode::SoundnessAlarm, "rotundity witness " + format_matrix(q.rows()) + " did not recompute");
  auto [req, rel] = requirement(q);
  verdict.status = bad;
  verdict.witness = RotundViolation{q, dim, req, rel};
  return verdict;
}

std::vector<long> hyperplane_coefficients(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> box(-kHyperplaneBox, kHyperplaneBox);
  std::vector<long> p(2 * n);
  for (auto& c : p) c = box(rng);
  return p;
}

TSVariety intersect_generic_hyperplane(const TSVariety& v, std::uint64_t seed, const GroebnerBudget& budget) {
  if (v.dim() <= static_cast<int>(v.n()))
    fail(ErrorCode::DimTooSmall, "dim V = " + std::to_string(v.dim()) + " is not above n = " + std::to_string(v.n()));
  const TSVariety withEq = TSVariety::implicitize(v, budget);
  const std::size_t n = v.n(), nv = 2 * n + v.base().ngens();
  const auto p = hyperplane_coefficients(n, seed);
  MultiPoly h = MultiPoly::constant(nv, Q(-1));
  for (std::size_t i = 0; i < 2 * n; ++i) h += MultiPoly::variable(nv, i) * Q(Z(p[i]));
  auto eqs = withEq.equations();
  eqs.push_back(std::move(h));
  const int dim = equation_dim(n, v.base().ngens(), eqs, budget);
  if (dim != v.dim() - 1)
    fail(ErrorCode::Degenerate, "hyperplane from seed " + std::to_string(seed) + " gives a section of dimension " +
                                    std::to_string(dim) + ", expected " + std::to_string(v.dim() - 1));
  return TSVariety::from_equations(v.base(), n, std::move(eqs), budget);
}

TSVariety rabinovich(const TSVariety& v, const std::vector<MultiPoly>& fs, const GroebnerBudget& budget) {
  const std::size_t n = v.n(), k = v.base().ngens(), m = fs.size(), nv = 2 * n + k;
  for (const auto& f : fs)
    if (f.nvars() != nv) fail(ErrorCode::InvalidArgument, "rabinovich polynomial has the wrong arity");
  const std::size_t n2 = n + m, nv2 = 2 * n2 + k;

  std::optional<std::vector<MultiPoly>> eqs;
  if (v.has_equations()) {
    // Vanishing test: 1 in I + <1 - w f> over Q(gens), in [x, y, yinv, w, gens].
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t total = 3 * n + 1 + k;
      auto gens = saturated(n, k, 1, v.equations());
      auto into = coords_into(n, k, 3 * n + 1);
      gens.push_back(MultiPoly::constant(total, Q(1)) - MultiPoly::variable(total, 3 * n) * fs[i].remapped(total, into));
      std::vector<std::size_t> keep(3 * n + 1);
      std::iota(keep.begin(), keep.end(), 0);
      if (projected_dimension(Ideal(total, gens), {}, keep, budget) < 0)
        fail(ErrorCode::FVanishes, "f" + std::to_string(i + 1) + " vanishes on V");
    }
    // Old x_i -> x_i, y_i -> y_i of the larger ambient, generators shifted.
    std::vector<int> map(nv);
    for (std::size_t i = 0; i < n; ++i) {
      map[i] = static_cast<int>(i);
      map[n + i] = static_cast<int>(n2 + i);
    }
    for (std::size_t g = 0; g < k; ++g) map[2 * n + g] = static_cast<int>(2 * n2 + g);
    eqs.emplace();
    for (const auto& e : v.equations()) eqs->push_back(e.remapped(nv2, map));
    for (std::size_t i = 0; i < m; ++i)
      eqs->push_back(fs[i].remapped(nv2, map) * MultiPoly::variable(nv2, n2 + n + i) - MultiPoly::constant(nv2, Q(1)));
  }

  std::optional<Parametrization> param;
  if (v.has_parametrization()) {
    const auto& p = v.parametrization();
    const std::size_t d = p.params.size(), np = k + d;
    RFVector values;
    for (const auto& c : p.x) values.push_back(c);
    for (const auto& c : p.y) values.push_back(c);
    for (std::size_t g = 0; g < k; ++g) values.push_back(RationalFunction::variable(np, g));
    Parametrization q;
    q.params = p.params;
    std::vector<std::string> taken = v.parameter_ring_names();
    for (std::size_t i = 0; i < m; ++i) {
      std::string name;
      for (int c = static_cast<int>(i) + 1;; ++c) {
        name = "r" + std::to_string(c);
        if (std::find(taken.begin(), taken.end(), name) == taken.end()) break;
      }
      taken.push_back(name);
      q.params.push_back(name);
    }
    const std::size_t np2 = np + m;
    for (const auto& c : p.x) q.x.push_back(c.extended(np2));
    for (std::size_t i = 0; i < m; ++i) q.x.push_back(RationalFunction::variable(np2, np + i));
    for (const auto& c : p.y) q.y.push_back(c.extended(np2));
    for (std::size_t i = 0; i < m; ++i) {
      RationalFunction fv = evaluate(fs[i], values);
      if (fv.is_zero()) fail(ErrorCode::FVanishes, "f" + std::to_string(i + 1) + " vanishes on V");
      q.y.push_back(fv.inverse().extended(np2));
    }
    param = std::move(q);
  }

  if (eqs && param) return TSVariety::from_both(v.base(), n2, std::move(*eqs), std::move(*param), budget);
  if (eqs) return TSVariety::from_equations(v.base(), n2, std::move(*eqs), budget);
  return TSVariety::from_parametrization(v.base(), std::move(*param));
}

}  // namespace expdiff

#include "expdiff/algebra/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "expdiff/error.hpp"

namespace expdiff {

std::size_t MonomialOrder::nvars() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size;
  return n;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  std::size_t start = 0;
  for (const auto& blk : blocks_) {
    const std::size_t end = start + blk.size;
    if (blk.kind == OrderKind::GrevLex) {
      int da = 0, db = 0;
      for (std::size_t i = start; i < end; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t i = end; i-- > start;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      }
    } else {
      for (std::size_t i = start; i < end; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
    }
    start = end;
  }
  return 0;
}

Ideal::Ideal(std::size_t nvars, std::vector<MultiPoly> generators)
    : nvars_(nvars), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.nvars() != nvars_) throw std::invalid_argument("Ideal: generator arity mismatch");
}

bool Ideal::is_unit() const {
  if (!basis_) throw std::logic_error("Ideal::is_unit without basis");
  return basis_->size() == 1 && basis_->front().is_constant() && !basis_->front().is_zero();
}

namespace {

using Term = MultiPoly::Term;
using TermList = std::vector<Term>;

struct Engine {
  const MonomialOrder& order;
  std::size_t n;

  bool greater(const Monomial& a, const Monomial& b) const { return order.compare(a, b) > 0; }

  TermList sorted(const MultiPoly& p) const {
    TermList t = p.terms();
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return greater(a.exponents, b.exponents); });
    return t;
  }

  // a - c * x^m * b, both sorted.
  TermList sub_scaled(const TermList& a, const Q& c, const Monomial& m, const TermList& b) const {
    TermList out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    Monomial e(n);
    while (i < a.size() || j < b.size()) {
      if (j < b.size())
        for (std::size_t k = 0; k < n; ++k) e[k] = b[j].exponents[k] + m[k];
      int cmp;
      if (j == b.size())
        cmp = 1;
      else if (i == a.size())
        cmp = -1;
      else
        cmp = order.compare(a[i].exponents, e);
      if (cmp > 0) {
        out.push_back(a[i++]);
      } else if (cmp < 0) {
        out.push_back({e, -c * b[j].coeff});
        ++j;
      } else {
        Q v = a[i].coeff - c * b[j].coeff;
        if (v != 0) out.push_back({a[i].exponents, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_monic(TermList& t) const {
    if (t.empty()) return;
    Q inv = 1 / t.front().coeff;
    for (auto& x : t) x.coeff *= inv;
  }

  // Full reduction of f modulo the polynomials in `by` (indices into polys).
  TermList reduce(TermList f, const std::vector<TermList>& polys, const std::vector<std::size_t>& by) const {
    TermList rem;
    while (!f.empty()) {
      const Term lt = f.front();
      bool reduced = false;
      for (std::size_t idx : by) {
        const TermList& g = polys[idx];
        if (!divides(g.front().exponents, lt.exponents)) continue;
        Monomial m(n);
        for (std::size_t k = 0; k < n; ++k) m[k] = lt.exponents[k] - g.front().exponents[k];
        Q c = lt.coeff / g.front().coeff;
        f = sub_scaled(f, c, m, g);
        reduced = true;
        break;
      }
      if (!reduced) {
        rem.push_back(lt);
        f.erase(f.begin());
      }
    }
    return rem;
  }

  MultiPoly to_poly(const TermList& t) const { return MultiPoly::from_terms(n, t); }
};

int degree_of(const TermList& t) {
  int d = 0;
  for (const auto& x : t) d = std::max(d, total_degree(x.exponents));
  return d;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

Monomial leading_monomial(const MultiPoly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading_monomial of zero");
  const Monomial* best = &p.terms().front().exponents;
  for (const auto& t : p.terms())
    if (order.compare(t.exponents, *best) > 0) best = &t.exponents;
  return *best;
}

MultiPoly normal_form(const MultiPoly& p, std::span<const MultiPoly> basis, const MonomialOrder& order) {
  Engine eng{order, p.nvars()};
  std::vector<TermList> polys;
  std::vector<std::size_t> idx;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    idx.push_back(polys.size());
    polys.push_back(eng.sorted(b));
  }
  return eng.to_poly(eng.reduce(eng.sorted(p), polys, idx));
}

Ideal groebner(const Ideal& ideal, const MonomialOrder& order, const GroebnerBudget& budget) {
  const std::size_t n = ideal.nvars();
  if (order.nvars() != n) throw std::invalid_argument("groebner: order arity mismatch");
  Engine eng{order, n};

  std::vector<TermList> polys;
  std::vector<bool> active;
  std::vector<Pair> pairs;
  long processed = 0;

  auto check_degree = [&](const TermList& t) {
    int d = degree_of(t);
    if (d > budget.max_degree)
      fail(ErrorCode::Budget, "groebner budget exceeded: max_degree " + std::to_string(budget.max_degree) +
                                  " (reached " + std::to_string(d) + ")");
  };

  auto active_indices = [&]() {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) v.push_back(i);
    return v;
  };

  // Gebauer-Moeller update with new polynomial at index h.
  auto update = [&](std::size_t h) {
    const Monomial& lh = polys[h].front().exponents;
    std::vector<Pair> c;
    for (std::size_t g = 0; g < h; ++g)
      if (active[g]) c.push_back({g, h, lcm(polys[g].front().exponents, lh)});
    std::vector<Pair> d;
    while (!c.empty()) {
      Pair p = c.front();
      c.erase(c.begin());
      bool keep = coprime(polys[p.i].front().exponents, lh);
      if (!keep) {
        keep = true;
        for (const auto& q : c)
          if (divides(q.lcm, p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && divides(q.lcm, p.lcm)) keep = false;
      }
      if (keep) d.push_back(std::move(p));
    }
    std::vector<Pair> kept;
    for (auto& p : pairs) {
      bool drop = divides(lh, p.lcm) && lcm(polys[p.i].front().exponents, lh) != p.lcm &&
                  lcm(polys[p.j].front().exponents, lh) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : d)
      if (!coprime(polys[p.i].front().exponents, lh)) kept.push_back(std::move(p));
    pairs = std::move(kept);
    for (std::size_t g = 0; g < h; ++g)
      if (active[g] && divides(lh, polys[g].front().exponents)) active[g] = false;
    active.push_back(true);
  };

  auto add = [&](TermList t) {
    eng.make_monic(t);
    check_degree(t);
    polys.push_back(std::move(t));
    update(polys.size() - 1);
  };

  // Seed with the generators, each reduced by what came before.
  std::vector<MultiPoly> gens = ideal.generators();
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    TermList t = eng.reduce(eng.sorted(g), polys, active_indices());
    if (!t.empty()) add(std::move(t));
  }

  while (!pairs.empty()) {
    if (++processed > budget.max_pairs)
      fail(ErrorCode::Budget, "groebner budget exceeded: max_pairs " + std::to_string(budget.max_pairs));
    // Normal strategy: smallest lcm first, ties on indices.
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      int c = order.compare(pairs[k].lcm, pairs[best].lcm);
      if (c < 0 || (c == 0 && std::tie(pairs[k].j, pairs[k].i) < std::tie(pairs[best].j, pairs[best].i)))
        best = k;
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

    const TermList& f = polys[p.i];
    const TermList& g = polys[p.j];
    Monomial mf(n), mg(n);
    for (std::size_t k = 0; k < n; ++k) {
      mf[k] = p.lcm[k] - f.front().exponents[k];
      mg[k] = p.lcm[k] - g.front().exponents[k];
    }
    TermList s = eng.sub_scaled(TermList{}, Q(-1) / f.front().coeff, mf, f);
    s = eng.sub_scaled(s, Q(1) / g.front().coeff, mg, g);
    check_degree(s);
    TermList r = eng.reduce(std::move(s), polys, active_indices());
    if (!r.empty()) add(std::move(r));
  }

  // Reduced basis: active elements, interreduced.
  std::vector<std::size_t> act = active_indices();
  std::vector<TermList> reduced;
  for (std::size_t a : act) {
    std::vector<std::size_t> others;
    for (std::size_t b : act)
      if (b != a) others.push_back(b);
    TermList head{polys[a].front()};
    TermList tail(polys[a].begin() + 1, polys[a].end());
    TermList rt = eng.reduce(std::move(tail), polys, others);
    head.insert(head.end(), rt.begin(), rt.end());
    eng.make_monic(head);
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const TermList& a, const TermList& b) {
    return order.compare(a.front().exponents, b.front().exponents) < 0;
  });

  Ideal out = ideal;
  auto basis = std::make_shared<std::vector<MultiPoly>>();
  for (const auto& t : reduced) basis->push_back(eng.to_poly(t));
  out.basis_ = std::move(basis);
  out.order_ = order;
  return out;
}

int dimension_from_leading(const std::vector<Monomial>& leading, std::span<const std::size_t> vars) {
  const std::size_t k = vars.size();
  if (k > 30) throw std::invalid_argument("dimension_from_leading: too many variables");
  std::vector<std::uint32_t> masks;
  for (const auto& m : leading) {
    std::uint32_t mask = 0;
    bool other = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto it = std::find(vars.begin(), vars.end(), i);
      if (it == vars.end())
        other = true;
      else
        mask |= std::uint32_t{1} << static_cast<unsigned>(it - vars.begin());
    }
    (void)other;
    if (mask == 0) return -1;
    masks.push_back(mask);
  }
  int best = 0;
  const std::uint32_t total = std::uint32_t{1} << k;
  for (std::uint32_t s = 0; s < total; ++s) {
    int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (auto m : masks)
      if ((m & ~s) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

int ideal_dimension(const Ideal& ideal, const GroebnerBudget& budget) {
  return dimension_over_parameters(ideal, ideal.nvars(), budget);
}

int dimension_over_parameters(const Ideal& ideal, std::size_t nmain, const GroebnerBudget& budget) {
  const std::size_t n = ideal.nvars();
  std::vector<MonomialOrder::Block> blocks;
  if (nmain > 0) blocks.push_back({nmain, OrderKind::GrevLex});
  if (n > nmain) blocks.push_back({n - nmain, OrderKind::GrevLex});
  MonomialOrder order(blocks);
  Ideal gb = ideal.has_basis() && ideal.order() == order ? ideal : groebner(ideal, order, budget);
  std::vector<Monomial> lms;
  for (const auto& g : gb.basis()) lms.push_back(leading_monomial(g, order));
  std::vector<std::size_t> vars(nmain);
  std::iota(vars.begin(), vars.end(), 0);
  return dimension_from_leading(lms, vars);
}

Ideal eliminate(const Ideal& ideal, std::span<const std::size_t> drop, const GroebnerBudget& budget) {
  const std::size_t n = ideal.nvars();
  std::vector<bool> is_drop(n, false);
  for (auto d : drop) {
    if (d >= n) throw std::invalid_argument("eliminate: variable out of range");
    is_drop[d] = true;
  }
  // Permute dropped variables to the front.
  std::vector<int> fwd(n), back(n);
  int pos = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (is_drop[i]) fwd[i] = pos++;
  const std::size_t ndrop = static_cast<std::size_t>(pos);
  for (std::size_t i = 0; i < n; ++i)
    if (!is_drop[i]) fwd[i] = pos++;
  for (std::size_t i = 0; i < n; ++i) back[static_cast<std::size_t>(fwd[i])] = static_cast<int>(i);

  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.remapped(n, fwd));
  std::vector<MonomialOrder::Block> blocks;
  if (ndrop > 0) blocks.push_back({ndrop, OrderKind::GrevLex});
  if (n > ndrop) blocks.push_back({n - ndrop, OrderKind::GrevLex});
  if (blocks.empty()) blocks.push_back({0, OrderKind::GrevLex});
  Ideal gb = groebner(Ideal(n, gens), MonomialOrder(blocks), budget);

  std::vector<MultiPoly> kept;
  for (const auto& g : gb.basis()) {
    bool uses_drop = false;
    for (std::size_t v = 0; v < ndrop; ++v)
      if (g.involves(v)) uses_drop = true;
    if (!uses_drop) kept.push_back(g.remapped(n, back));
  }
  return Ideal(n, kept);
}

int projected_dimension(const Ideal& ideal, std::span<const std::size_t> drop, std::span<const std::size_t> keep,
                        const GroebnerBudget& budget) {
  const std::size_t n = ideal.nvars();
  std::vector<int> fwd(n, -1);
  int pos = 0;
  for (auto d : drop) fwd.at(d) = pos++;
  const std::size_t ndrop = static_cast<std::size_t>(pos);
  for (auto k : keep) {
    if (fwd.at(k) >= 0) throw std::invalid_argument("projected_dimension: overlapping variable sets");
    fwd[k] = pos++;
  }
  const std::size_t nkeep = static_cast<std::size_t>(pos) - ndrop;
  for (std::size_t i = 0; i < n; ++i)
    if (fwd[i] < 0) fwd[i] = pos++;
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.remapped(n, fwd));
  std::vector<MonomialOrder::Block> blocks;
  for (std::size_t size : {ndrop, nkeep, n - ndrop - nkeep})
    if (size > 0) blocks.push_back({size, OrderKind::GrevLex});
  if (blocks.empty()) blocks.push_back({0, OrderKind::GrevLex});
  MonomialOrder order(blocks);
  Ideal gb = groebner(Ideal(n, gens), order, budget);
  // A unit over Q(params) anywhere in the basis means V(I) is empty.
  std::vector<std::size_t> main(ndrop + nkeep);
  std::iota(main.begin(), main.end(), 0);
  std::vector<Monomial> all_lms, kept_lms;
  for (const auto& g : gb.basis()) {
    Monomial lm = leading_monomial(g, order);
    all_lms.push_back(lm);
    bool uses_drop = false;
    for (std::size_t v = 0; v < ndrop; ++v)
      if (g.involves(v)) uses_drop = true;
    if (!uses_drop) kept_lms.push_back(lm);
  }
  if (dimension_from_leading(all_lms, main) < 0) return -1;
  std::vector<std::size_t> kept_vars(nkeep);
  std::iota(kept_vars.begin(), kept_vars.end(), ndrop);
  return dimension_from_leading(kept_lms, kept_vars);
}

bool ideal_contains(const Ideal& with_basis, const MultiPoly& p) {
  return normal_form(p, with_basis.basis(), with_basis.order()).is_zero();
}

}  // namespace expdiff

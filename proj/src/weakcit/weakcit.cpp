#include "expdiff/weakcit/weakcit.hpp"

#include <algorithm>
#include <numeric>

#include "expdiff/algebra/polygcd.hpp"
#include "expdiff/error.hpp"

namespace expdiff {

FactorBase::FactorBase(std::size_t nvars, std::vector<MultiPoly> elements)
    : nvars_(nvars), elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const MultiPoly& a = elements_[i];
    if (a.nvars() != nvars_) fail(ErrorCode::InvalidArgument, "factor base element has the wrong arity");
    if (a.is_zero()) fail(ErrorCode::InvalidArgument, "factor base element is zero");
    if (a.is_constant()) {
      Q c = a.constant_value();
      if (c.get_den() != 1 || c <= 1 || mpz_probab_prime_p(c.get_num().get_mpz_t(), 30) == 0)
        fail(ErrorCode::InvalidArgument, "constant factor base element " + c.get_str() + " is not a prime");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const MultiPoly& b = elements_[j];
      bool clash = a.is_constant() && b.is_constant() ? a == b : !gcd(a, b).is_constant();
      if (clash)
        fail(ErrorCode::InvalidArgument,
             "factor base elements " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " are not coprime");
    }
  }
}

bool FactorBase::has_primes() const {
  return std::any_of(elements_.begin(), elements_.end(), [](const MultiPoly& p) { return p.is_constant(); });
}

namespace {

// Strips every nonconstant base element from p, adding multiplicities
// with the given sign; returns the constant cofactor or nullopt.
std::optional<Q> strip(MultiPoly p, const std::vector<MultiPoly>& base, IntVec& exps, long long sign) {
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].is_constant()) continue;
    while (auto q = try_divide(p, base[i])) {
      p = std::move(*q);
      exps[i] += sign;
    }
  }
  if (!p.is_constant()) return std::nullopt;
  return p.constant_value();
}

// Removes prime powers from z, with the given sign.
Z strip_primes(Z z, const std::vector<MultiPoly>& base, IntVec& exps, long long sign) {
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!base[i].is_constant()) continue;
    const Z prime = base[i].constant_value().get_num();
    while (z % prime == 0) {
      z /= prime;
      exps[i] += sign;
    }
  }
  return z;
}

}  // namespace

std::optional<FactorBase::Decomposition> FactorBase::decompose(const RationalFunction& c) const {
  if (c.is_zero() || c.nvars() != nvars_) return std::nullopt;
  Decomposition d{Q(1), IntVec(elements_.size(), 0)};
  auto a = strip(c.num(), elements_, d.exponents, 1);
  auto b = strip(c.den(), elements_, d.exponents, -1);
  if (!a || !b) return std::nullopt;
  Q unit = *a / *b;
  if (has_primes()) {
    Z num = strip_primes(abs(unit.get_num()), elements_, d.exponents, 1);
    Z den = strip_primes(unit.get_den(), elements_, d.exponents, -1);
    if (num != 1 || den != 1) return std::nullopt;
    unit = sgn(unit) < 0 ? Q(-1) : Q(1);
  }
  d.unit = unit;
  return d;
}

IntLattice dependency_lattice(const RFVector& x, const FactorBase& base) {
  // Column i holds the exponent vector of x_i.
  IntMatrix m(base.size(), IntVec(x.size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto d = base.decompose(x[i]);
    if (!d)
      fail(ErrorCode::FactorizationIncomplete, "coordinate " + std::to_string(i + 1) + " does not factor over the base");
    for (std::size_t r = 0; r < base.size(); ++r) m[r][i] = d->exponents[r];
  }
  if (base.size() == 0) return IntLattice::full(x.size());
  return lattice_kernel(m, x.size());
}

const char* cit_status_name(CitStatus s) {
  switch (s) {
    case CitStatus::Typical: return "TYPICAL";
    case CitStatus::AtypicalResolved: return "ATYPICAL_RESOLVED";
    case CitStatus::AtypicalUnresolved: return "ATYPICAL_UNRESOLVED";
  }
  return "?";
}

AtypicalityReport analyze_intersection(const DiffField& field, const Ideal& u, const RFVector& x,
                                       const FactorBase& base, const GroebnerBudget& budget) {
  const std::size_t n = x.size(), k = field.ngens();
  if (u.nvars() != n + k) fail(ErrorCode::InvalidArgument, "U must live in n y-variables plus the generators");
  RFVector values = x;
  for (std::size_t g = 0; g < k; ++g) values.push_back(field.gen(g));
  for (std::size_t i = 0; i < u.generators().size(); ++i)
    if (!evaluate(u.generators()[i], values).is_zero())
      fail(ErrorCode::PointNotOnU, "equation " + std::to_string(i + 1) + " of U does not vanish at the point");

  AtypicalityReport r;
  r.n = n;
  r.point = x;
  r.dependencies = dependency_lattice(x, base);
  // [y, yinv, gens]
  const std::size_t total = 2 * n + k;
  std::vector<int> into(n + k);
  for (std::size_t i = 0; i < n; ++i) into[i] = static_cast<int>(i);
  for (std::size_t g = 0; g < k; ++g) into[n + g] = static_cast<int>(2 * n + g);
  std::vector<MultiPoly> gens;
  for (const auto& e : u.generators()) gens.push_back(e.remapped(total, into));
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back(MultiPoly::variable(total, i) * MultiPoly::variable(total, n + i) - MultiPoly::constant(total, Q(1)));
  std::vector<std::size_t> drop(n), keep(n);
  std::iota(drop.begin(), drop.end(), n);
  std::iota(keep.begin(), keep.end(), 0);
  r.dim_u = projected_dimension(Ideal(total, gens), drop, keep, budget);
  r.dim_coset = static_cast<int>(n - r.dependencies.rank());
  // td over K = Q(constants, generators occurring in U).
  std::vector<bool> skip(k, false);
  for (const auto& e : u.generators())
    for (std::size_t g = 0; g < k; ++g)
      if (e.involves(n + g)) skip[g] = true;
  r.td = static_cast<int>(field.formal_rank(x, skip));
  r.atypicality = static_cast<long>(r.td) - (static_cast<long>(r.dim_u) + r.dim_coset - static_cast<long>(n));
  r.status = r.atypicality <= 0 ? CitStatus::Typical : CitStatus::AtypicalUnresolved;
  return r;
}

AtypicalityReport search_bounded_dependencies(const DiffField& field, AtypicalityReport report, int bound) {
  if (report.status == CitStatus::Typical) return report;
  report.bound = bound;
  report.witness.reset();
  report.status = CitStatus::AtypicalUnresolved;
  const std::size_t n = report.n;
  if (bound < 1 || n == 0) return report;

  // Sign-canonical lattice vectors in the box, by norm then lex.
  std::vector<IntVec> candidates;
  IntVec v(n, -bound);
  while (true) {
    auto first = std::find_if(v.begin(), v.end(), [](long long e) { return e != 0; });
    if (first != v.end() && *first > 0 && report.dependencies.contains(v)) candidates.push_back(v);
    std::size_t i = n;
    while (i > 0 && v[i - 1] == bound) v[--i] = -bound;
    if (i == 0) break;
    ++v[i - 1];
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const IntVec& a, const IntVec& b) { return max_norm(a) < max_norm(b); });

  IntMatrix chosen;
  for (const auto& c : candidates) {
    if (static_cast<long>(chosen.size()) >= report.atypicality) break;
    auto trial = chosen;
    trial.push_back(c);
    if (IntLattice::span(n, trial).rank() == trial.size()) chosen = std::move(trial);
  }
  if (static_cast<long>(chosen.size()) < report.atypicality) return report;
  for (const auto& m : chosen)
    if (!field.is_constant(character_value(report.point, m, field.ngens()))) return report;
  report.witness = IntLattice::span(n, chosen);
  report.status = CitStatus::AtypicalResolved;
  return report;
}

}  // namespace expdiff

#include "expdiff/algebra/linalg.hpp"

#include <map>
#include <stdexcept>

#include "expdiff/algebra/polygcd.hpp"

namespace expdiff {

Echelon row_reduce(const RFMatrix& m, std::size_t ncols, std::size_t nvars) {
  RFMatrix a = m;
  for (auto& row : a)
    if (row.size() != ncols) throw std::invalid_argument("row_reduce: ragged matrix");
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    RationalFunction inv = a[r][c].inverse();
    for (std::size_t k = c; k < ncols; ++k) a[r][k] = a[r][k] * inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      RationalFunction f = a[i][c];
      for (std::size_t k = c; k < ncols; ++k) {
        if (!a[r][k].is_zero()) a[i][k] = a[i][k] - f * a[r][k];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rref = std::move(a);
  (void)nvars;
  return out;
}

std::size_t rank(const RFMatrix& m, std::size_t ncols, std::size_t nvars) {
  return row_reduce(m, ncols, nvars).pivots.size();
}

std::vector<RFVector> nullspace_over_field(const RFMatrix& m, std::size_t ncols, std::size_t nvars) {
  Echelon e = row_reduce(m, ncols, nvars);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<RFVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RFVector v(ncols, RationalFunction(nvars));
    v[f] = RationalFunction::constant(nvars, Q(1));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rref[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RFVector> solve_particular(const RFMatrix& m, const RFVector& b, std::size_t ncols,
                                         std::size_t nvars) {
  if (b.size() != m.size()) throw std::invalid_argument("solve_particular: rhs size");
  RFMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = row_reduce(aug, ncols + 1, nvars);
  RFVector x(ncols, RationalFunction(nvars));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == ncols) return std::nullopt;
    x[e.pivots[i]] = e.rref[i][ncols];
  }
  return x;
}

std::vector<std::vector<Z>> rational_relation_constraints(std::span<const RFVector> columns) {
  const std::size_t n = columns.size();
  std::vector<std::vector<Z>> rows;
  if (n == 0) return rows;
  const std::size_t nrows = columns.front().size();
  for (std::size_t r = 0; r < nrows; ++r) {
    // Common denominator of row r.
    std::size_t nv = columns.front()[r].nvars();
    MultiPoly l = MultiPoly::constant(nv, Q(1));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = columns[i][r].den();
      if (d.is_one()) continue;
      MultiPoly g = gcd(l, d);
      l = l * exact_divide(d, g);
    }
    std::map<Monomial, std::vector<Q>> eqs;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = columns[i][r];
      if (f.is_zero()) continue;
      MultiPoly scaled = f.num() * exact_divide(l, f.den());
      for (const auto& t : scaled.terms()) {
        auto& row = eqs[t.exponents];
        if (row.empty()) row.assign(n, Q(0));
        row[i] += t.coeff;
      }
    }
    for (auto& [mono, row] : eqs) {
      Z den = 1;
      for (const auto& q : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
      std::vector<Z> irow(n);
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        irow[i] = row[i].get_num() * (den / row[i].get_den());
        if (irow[i] != 0) nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(irow));
    }
  }
  return rows;
}

}  // namespace expdiff

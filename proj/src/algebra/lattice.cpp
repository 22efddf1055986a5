#include "expdiff/algebra/lattice.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace expdiff {

namespace {

using BigRow = std::vector<Z>;

long long narrow(const Z& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("lattice entry exceeds 64 bits");
  return z.get_si();
}

}  // namespace

std::vector<BigRow> hermite_normal_form(std::vector<BigRow> a, std::size_t ncols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero remains.
    for (;;) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        if (best == a.size() || abs(a[i][c]) < abs(a[best][c])) best = i;
      }
      if (best == a.size()) break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (std::size_t k = c; k < ncols; ++k) a[i][k] -= q * a[r][k];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= a.size() || a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (std::size_t k = c; k < ncols; ++k) a[r][k] = -a[r][k];
    for (std::size_t i = 0; i < r; ++i) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t k = c; k < ncols; ++k) a[i][k] -= q * a[r][k];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

std::vector<BigRow> to_big(const IntMatrix& m) {
  std::vector<BigRow> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    BigRow b;
    b.reserve(row.size());
    for (long long v : row) b.emplace_back(static_cast<long>(v));
    out.push_back(std::move(b));
  }
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& rows, std::size_t ncols) {
  auto h = hermite_normal_form(to_big(rows), ncols);
  IntMatrix out;
  for (const auto& row : h) {
    IntVec v;
    for (const auto& z : row) v.push_back(narrow(z));
    out.push_back(std::move(v));
  }
  return out;
}

long long gcd_of(const IntVec& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  return g;
}

long long max_norm(const IntVec& v) {
  long long m = 0;
  for (long long x : v) m = std::max(m, std::llabs(x));
  return m;
}

std::string format_vector(const IntVec& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << format_vector(m[i]);
  os << "]";
  return os.str();
}

IntLattice IntLattice::span(std::size_t ambient, const IntMatrix& generators) {
  for (const auto& g : generators)
    if (g.size() != ambient) throw std::invalid_argument("IntLattice::span arity");
  IntLattice l(ambient);
  l.basis_ = hermite_normal_form(generators, ambient);
  return l;
}

IntLattice IntLattice::full(std::size_t ambient) {
  IntMatrix id(ambient, IntVec(ambient, 0));
  for (std::size_t i = 0; i < ambient; ++i) id[i][i] = 1;
  return span(ambient, id);
}

bool IntLattice::contains(const IntVec& v) const {
  if (v.size() != ambient_) return false;
  std::vector<Z> r;
  for (long long x : v) r.emplace_back(static_cast<long>(x));
  // Reduce by the echelon basis.
  for (const auto& row : basis_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    Z piv(static_cast<long>(row[p]));
    if (r[p] % piv != 0) return false;
    Z q = r[p] / piv;
    for (std::size_t k = 0; k < ambient_; ++k) r[k] -= q * Z(static_cast<long>(row[k]));
  }
  for (const auto& z : r)
    if (z != 0) return false;
  return true;
}

bool IntLattice::is_saturated() const { return saturation() == *this; }

IntLattice IntLattice::saturation() const {
  if (basis_.empty()) return *this;
  // Orthogonal complement, then its integer kernel.
  IntLattice perp = lattice_kernel(basis_, ambient_);
  if (perp.is_zero()) return full(ambient_);
  return lattice_kernel(perp.basis_, ambient_);
}

std::string IntLattice::to_string() const { return format_matrix(basis_); }

IntLattice lattice_kernel(const std::vector<BigRow>& m, std::size_t ncols) {
  const std::size_t k = m.size();
  // Rows [column_i of M | e_i]; HNF rows with zero left block span the kernel.
  std::vector<BigRow> aug(ncols, BigRow(k + ncols, Z(0)));
  for (std::size_t i = 0; i < ncols; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (m[j].size() != ncols) throw std::invalid_argument("lattice_kernel: ragged matrix");
      aug[i][j] = m[j][i];
    }
    aug[i][k + i] = 1;
  }
  auto h = hermite_normal_form(std::move(aug), k + ncols);
  IntMatrix kernel;
  for (const auto& row : h) {
    bool left_zero = true;
    for (std::size_t j = 0; j < k; ++j)
      if (row[j] != 0) left_zero = false;
    if (!left_zero) continue;
    IntVec v;
    for (std::size_t i = 0; i < ncols; ++i) v.push_back(narrow(row[k + i]));
    kernel.push_back(std::move(v));
  }
  return IntLattice::span(ncols, kernel);
}

IntLattice lattice_kernel(const IntMatrix& m, std::size_t ncols) {
  return lattice_kernel(to_big(m), ncols);
}

}  // namespace expdiff

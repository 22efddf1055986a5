#include "expdiff/algebra/polygcd.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace expdiff {

std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return MultiPoly(a.nvars());
  if (b.is_constant()) return a * (1 / b.constant_value());

  const auto& lb = b.leading_term();
  MultiPoly q(a.nvars());
  MultiPoly r = a;
  std::vector<MultiPoly::Term> qterms;
  // Lex leading terms: b | a forces every leading term of the running
  // remainder to be divisible by lt(b).
  while (!r.is_zero()) {
    const auto& lr = r.leading_term();
    if (!divides(lb.exponents, lr.exponents)) return std::nullopt;
    Monomial m(lr.exponents.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = lr.exponents[i] - lb.exponents[i];
    Q c = lr.coeff / lb.coeff;
    r -= b.mul_monomial(m, c);
    qterms.push_back({std::move(m), c});
  }
  return MultiPoly::from_terms(a.nvars(), std::move(qterms));
}

MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw std::domain_error("exact_divide: inexact polynomial division");
  return std::move(*q);
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  int db = b.degree_in(var);
  auto bc = b.coefficients_in(var);
  const MultiPoly& lcb = bc.back();
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    auto rc = r.coefficients_in(var);
    Monomial shift(a.nvars(), 0);
    shift[var] = dr - db;
    r = lcb * r - rc.back() * b.mul_monomial(shift, Q(1));
  }
  return r;
}

namespace {

MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& other) {
  Monomial g = mono.leading_term().exponents;
  for (const auto& t : other.terms()) g = mono_gcd(g, t.exponents);
  return MultiPoly::monomial(mono.nvars(), std::move(g), Q(1));
}

int highest_var(const MultiPoly& a, const MultiPoly& b) {
  for (std::size_t v = a.nvars(); v-- > 0;)
    if (a.involves(v) || b.involves(v)) return static_cast<int>(v);
  return -1;
}

constexpr std::uint64_t kPrime = 2147483647;

std::uint64_t mod_prime(const Q& q) {
  // Integer coefficients only; callers pass primitive integral polynomials.
  Z r;
  mpz_fdiv_r_ui(r.get_mpz_t(), q.get_num_mpz_t(), kPrime);
  return r.get_ui();
}

std::uint64_t pow_mod(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, static_cast<unsigned>(kPrime - 2)); }

// Image in F_p[var] after substituting point[i] for every other variable;
// index = degree.
std::vector<std::uint64_t> univariate_image(const MultiPoly& a, std::size_t var, const std::vector<std::uint64_t>& point) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(a.degree_in(var)) + 1, 0);
  for (const auto& t : a.terms()) {
    std::uint64_t c = mod_prime(t.coeff);
    for (std::size_t i = 0; i < t.exponents.size(); ++i)
      if (i != var && t.exponents[i]) c = c * pow_mod(point[i], static_cast<unsigned>(t.exponents[i])) % kPrime;
    auto& slot = out[static_cast<std::size_t>(t.exponents[var])];
    slot = (slot + c) % kPrime;
  }
  return out;
}

void trim(std::vector<std::uint64_t>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t univariate_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = a.back() * inv % kPrime;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[i + shift] = (a[i + shift] + kPrime - q * b[i] % kPrime) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Upper bound on deg_var gcd(a, b) from one modular image whose leading
// coefficients survive; -1 when no such image was found.
int gcd_degree_bound(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  std::vector<std::uint64_t> point(a.nvars());
  for (int attempt = 0; attempt < 3; ++attempt) {
    for (std::size_t i = 0; i < point.size(); ++i)
      point[i] = 1009 + 7919 * static_cast<std::uint64_t>(i + 1) * static_cast<std::uint64_t>(attempt + 1);
    auto ia = univariate_image(a, var, point), ib = univariate_image(b, var, point);
    if (ia.back() == 0 || ib.back() == 0) continue;
    return static_cast<int>(univariate_gcd_degree(ia, ib));
  }
  return -1;
}

}  // namespace

MultiPoly content_in(const MultiPoly& a, std::size_t var) {
  if (a.is_zero()) return a;
  auto coeffs = a.coefficients_in(var);
  MultiPoly g(a.nvars());
  for (auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly::constant(a.nvars(), Q(1));
  }
  return g;
}

MultiPoly primitive_part_in(const MultiPoly& a, std::size_t var) {
  if (a.is_zero()) return a;
  return exact_divide(a, content_in(a, var));
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(n, Q(1));
  if (a == b) return a.monic();
  if (a.size() == 1) return monomial_gcd(a, b);
  if (b.size() == 1) return monomial_gcd(b, a);

  int hv = highest_var(a, b);
  auto v = static_cast<std::size_t>(hv);
  if (!a.involves(v)) return gcd(a, content_in(b, v));
  if (!b.involves(v)) return gcd(content_in(a, v), b);

  MultiPoly ca = content_in(a, v);
  MultiPoly cb = content_in(b, v);
  MultiPoly pa = exact_divide(a, ca);
  MultiPoly pb = exact_divide(b, cb);
  MultiPoly g = gcd(ca, cb);

  pa = pa.primitive_integral();
  pb = pb.primitive_integral();
  int bound = gcd_degree_bound(pa, pb, v);
  if (bound == 0) return g.monic();
  // The bound is attained by a divisor only if that divisor is the gcd.
  if (bound == pb.degree_in(v) && try_divide(pa, pb)) return (g * pb).monic();
  if (bound == pa.degree_in(v) && try_divide(pb, pa)) return (g * pa).monic();
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // Primitive PRS.
  while (!pb.is_zero()) {
    MultiPoly r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    if (r.is_zero()) {
      pb = MultiPoly(n);
    } else if (!r.involves(v)) {
      pa = MultiPoly::constant(n, Q(1));
      pb = MultiPoly(n);
    } else {
      pb = primitive_part_in(r, v).primitive_integral();
    }
  }
  return (g * primitive_part_in(pa, v)).monic();
}

}  // namespace expdiff

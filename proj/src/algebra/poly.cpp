#include "expdiff/algebra/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace expdiff {

int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

namespace {

bool lex_greater(const Monomial& a, const Monomial& b) { return a > b; }

}  // namespace

MultiPoly MultiPoly::constant(std::size_t nvars, const Q& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_.push_back({Monomial(nvars, 0), c});
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index, int power) {
  if (index >= nvars) throw std::out_of_range("MultiPoly::variable index");
  Monomial m(nvars, 0);
  m[index] = power;
  MultiPoly p(nvars);
  p.terms_.push_back({std::move(m), Q(1)});
  return p;
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Monomial exps, const Q& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_.push_back({std::move(exps), c});
  return p;
}

MultiPoly MultiPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  MultiPoly p(nvars);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void MultiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return lex_greater(a.exponents, b.exponents); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_[0].exponents)
    if (e != 0) return false;
  return true;
}

bool MultiPoly::is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == 1; }

Q MultiPoly::constant_value() const {
  if (terms_.empty()) return Q(0);
  return terms_[0].coeff;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, expdiff::total_degree(t.exponents));
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
  return d;
}

bool MultiPoly::involves(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.exponents[var] != 0) return true;
  return false;
}

std::uint64_t MultiPoly::support_mask() const {
  std::uint64_t mask = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_ && i < 64; ++i)
      if (t.exponents[i] != 0) mask |= (std::uint64_t{1} << i);
  return mask;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two lex-descending term lists with a sign on the second.
std::vector<MultiPoly::Term> merge_terms(const std::vector<MultiPoly::Term>& a,
                                         const std::vector<MultiPoly::Term>& b, bool subtract) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && lex_greater(a[i].exponents, b[j].exponents))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || lex_greater(b[j].exponents, a[i].exponents)) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Q c = subtract ? Q(a[i].coeff - b[j].coeff) : Q(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].exponents, c});
      ++i;
      ++j;
    }
  }
  return out;
}

void check_arity(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("MultiPoly: variable count mismatch");
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity(nvars_, o.nvars_);
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_arity(nvars_, o.nvars_);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a.nvars_, b.nvars_);
  MultiPoly r(a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Monomial m(a.nvars_);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = s.exponents[i] + t.exponents[i];
      r.terms_.push_back({std::move(m), s.coeff * t.coeff});
    }
  }
  r.normalize();
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, Q(1));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(nvars_);
  for (const auto& t : terms_) {
    int e = t.exponents[var];
    if (e == 0) continue;
    Monomial m = t.exponents;
    m[var] = e - 1;
    r.terms_.push_back({std::move(m), t.coeff * e});
  }
  // Lowering one exponent preserves the relative lex order of distinct terms.
  return r;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Q& c) const {
  MultiPoly r(nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial e = t.exponents;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += m[i];
    r.terms_.push_back({std::move(e), t.coeff * c});
  }
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  MultiPoly r = *this;
  Q inv = 1 / leading_coeff();
  r *= inv;
  return r;
}

MultiPoly MultiPoly::primitive_integral() const {
  if (is_zero()) return *this;
  Z den_lcm = 1;
  for (const auto& t : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  Z num_gcd = 0;
  for (const auto& t : terms_) {
    Z v = t.coeff.get_num() * (den_lcm / t.coeff.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
  }
  Q scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (leading_coeff() < 0) scale = -scale;
  MultiPoly r = *this;
  r *= scale;
  return r;
}

MultiPoly MultiPoly::extended(std::size_t new_nvars) const {
  if (new_nvars < nvars_) throw std::invalid_argument("MultiPoly::extended shrinks");
  MultiPoly r(new_nvars);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m = t.exponents;
    m.resize(new_nvars, 0);
    r.terms_.push_back({std::move(m), t.coeff});
  }
  return r;
}

MultiPoly MultiPoly::remapped(std::size_t new_nvars, std::span<const int> map) const {
  if (map.size() != nvars_) throw std::invalid_argument("MultiPoly::remapped map size");
  MultiPoly r(new_nvars);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (t.exponents[i] == 0) continue;
      if (map[i] < 0) throw std::invalid_argument("MultiPoly::remapped drops a used variable");
      m[static_cast<std::size_t>(map[i])] += t.exponents[i];
    }
    r.terms_.push_back({std::move(m), t.coeff});
  }
  r.normalize();
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::vector<MultiPoly> out(static_cast<std::size_t>(degree_in(var)) + 1, MultiPoly(nvars_));
  std::vector<std::vector<Term>> buckets(out.size());
  for (const auto& t : terms_) {
    Monomial m = t.exponents;
    int d = m[var];
    m[var] = 0;
    buckets[static_cast<std::size_t>(d)].push_back({std::move(m), t.coeff});
  }
  for (std::size_t d = 0; d < out.size(); ++d) {
    // Zeroing one variable keeps lex order within a bucket.
    out[d].terms_ = std::move(buckets[d]);
  }
  return out;
}

Q MultiPoly::evaluate(std::span<const Q> point) const {
  Q acc = 0;
  for (const auto& t : terms_) {
    Q v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < t.exponents[i]; ++k) v *= point[i];
    }
    acc += v;
  }
  return acc;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Q c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool has_vars = expdiff::total_degree(t.exponents) > 0;
    bool wrote = false;
    if (!has_vars || c != 1) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      int e = t.exponents[i];
      if (e == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (e != 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace expdiff

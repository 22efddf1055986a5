#include "expdiff/algebra/ratfun.hpp"

#include <map>
#include <stdexcept>

#include "expdiff/algebra/polygcd.hpp"

namespace expdiff {

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), Q(1))) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
  if (num.nvars() != den.nvars()) throw std::invalid_argument("RationalFunction: arity mismatch");
  const std::size_t n = num.nvars();
  if (num.is_zero()) {
    num_ = MultiPoly(n);
    den_ = MultiPoly::constant(n, Q(1));
    return;
  }
  if (den.is_constant()) {
    num_ = num * (1 / den.constant_value());
    den_ = MultiPoly::constant(n, Q(1));
    return;
  }
  MultiPoly g = gcd(num, den);
  if (!g.is_constant()) {
    num = exact_divide(num, g);
    den = exact_divide(den, g);
  }
  Q scale = 1 / den.leading_coeff();
  num_ = num * scale;
  den_ = den * scale;
  if (den_.is_constant()) den_ = MultiPoly::constant(n, Q(1));
}

RationalFunction RationalFunction::constant(std::size_t nvars, const Q& c) {
  return RationalFunction(MultiPoly::constant(nvars, c));
}

RationalFunction RationalFunction::from_reduced(MultiPoly num, MultiPoly den) {
  RationalFunction r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalFunction RationalFunction::variable(std::size_t nvars, std::size_t index) {
  return RationalFunction(MultiPoly::variable(nvars, index));
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

RationalFunction make_reduced(MultiPoly num, MultiPoly den) {
  Q scale = 1 / den.leading_coeff();
  num *= scale;
  den *= scale;
  if (den.is_constant()) return RationalFunction(std::move(num));
  return RationalFunction::from_reduced(std::move(num), std::move(den));
}

RationalFunction add_impl(const RationalFunction& a, const RationalFunction& b, bool subtract) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return subtract ? -b : b;
  if (a.den() == b.den()) {
    MultiPoly num = subtract ? a.num() - b.num() : a.num() + b.num();
    return RationalFunction(std::move(num), a.den());
  }
  // Henrici: with g = gcd(b, d), a/b + c/d = (t/g2) / ((b/g)(d/g2)) where
  // t = a(d/g) + c(b/g) and g2 = gcd(t, g); the result is already reduced.
  const std::size_t n = a.nvars();
  MultiPoly bn = subtract ? -b.num() : b.num();
  MultiPoly g = gcd(a.den(), b.den());
  MultiPoly ad = g.is_constant() ? a.den() : exact_divide(a.den(), g);
  MultiPoly bd = g.is_constant() ? b.den() : exact_divide(b.den(), g);
  MultiPoly t = a.num() * bd + bn * ad;
  if (t.is_zero()) return RationalFunction(n);
  MultiPoly den = b.den();
  if (!g.is_constant()) {
    MultiPoly g2 = gcd(t, g);
    if (!g2.is_constant()) {
      t = exact_divide(t, g2);
      den = exact_divide(den, g2);
    }
  }
  return make_reduced(std::move(t), ad * den);
}

}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return add_impl(a, b, false);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return add_impl(a, b, true);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction(a.nvars());
  if (a.is_constant()) {
    RationalFunction r = b;
    r.num_ *= a.constant_value();
    return r;
  }
  if (b.is_constant()) {
    RationalFunction r = a;
    r.num_ *= b.constant_value();
    return r;
  }
  // Cross-cancel so the product is reduced without a full gcd of the result.
  MultiPoly g1 = gcd(a.num(), b.den());
  MultiPoly g2 = gcd(b.num(), a.den());
  MultiPoly an = g1.is_constant() ? a.num() : exact_divide(a.num(), g1);
  MultiPoly bd = g1.is_constant() ? b.den() : exact_divide(b.den(), g1);
  MultiPoly bn = g2.is_constant() ? b.num() : exact_divide(b.num(), g2);
  MultiPoly ad = g2.is_constant() ? a.den() : exact_divide(a.den(), g2);
  RationalFunction r(a.nvars());
  MultiPoly num = an * bn;
  MultiPoly den = ad * bd;
  Q scale = 1 / den.leading_coeff();
  r.num_ = num * scale;
  r.den_ = den * scale;
  if (r.den_.is_constant()) r.den_ = MultiPoly::constant(a.nvars(), Q(1));
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  return a * b.inverse();
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("RationalFunction: inverse of zero");
  RationalFunction r(nvars());
  Q scale = 1 / num_.leading_coeff();
  r.num_ = den_ * scale;
  r.den_ = num_ * scale;
  if (r.den_.is_constant()) {
    r.num_ *= 1 / r.den_.constant_value();
    r.den_ = MultiPoly::constant(nvars(), Q(1));
  }
  return r;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction r(nvars());
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (!involves(var)) return RationalFunction(nvars());
  if (den_.is_one()) return RationalFunction(num_.derivative(var));
  // With g = gcd(d, d') and h = d/g: (n/d)' = (n' h - n d'/g) / (g h^2). The
  // numerator is coprime to h, so only a gcd against g remains.
  MultiPoly dd = den_.derivative(var);
  MultiPoly g = gcd(den_, dd);
  MultiPoly h = exact_divide(den_, g);
  MultiPoly k = exact_divide(dd, g);
  MultiPoly num = num_.derivative(var) * h - num_ * k;
  if (num.is_zero()) return RationalFunction(nvars());
  MultiPoly c = gcd(num, g);
  if (!c.is_constant()) {
    num = exact_divide(num, c);
    g = exact_divide(g, c);
  }
  return make_reduced(std::move(num), g * h * h);
}

RationalFunction RationalFunction::extended(std::size_t new_nvars) const {
  RationalFunction r;
  r.num_ = num_.extended(new_nvars);
  r.den_ = den_.extended(new_nvars);
  return r;
}

RationalFunction RationalFunction::remapped(std::size_t new_nvars, std::span<const int> map) const {
  // A variable permutation/embedding preserves coprimality but may change
  // which term leads, so renormalize.
  return RationalFunction(num_.remapped(new_nvars, map), den_.remapped(new_nvars, map));
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_string(names);
  std::string n = num_.to_string(names);
  if (num_.size() > 1 || (num_.size() == 1 && n.front() == '-')) n = "(" + n + ")";
  return n + "/(" + den_.to_string(names) + ")";
}

RationalFunction evaluate(const MultiPoly& p, std::span<const RationalFunction> values) {
  if (values.size() != p.nvars()) throw std::invalid_argument("evaluate: value count");
  std::size_t target = values.empty() ? 0 : values.front().nvars();
  // Split into numerator/denominator powers to avoid repeated gcds.
  std::map<std::pair<std::size_t, int>, RationalFunction> cache;
  auto power = [&](std::size_t i, int e) -> const RationalFunction& {
    auto key = std::make_pair(i, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, values[i].pow(e)).first->second;
  };
  RationalFunction acc(target);
  for (const auto& t : p.terms()) {
    RationalFunction term = RationalFunction::constant(target, t.coeff);
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      if (t.exponents[i] == 0) continue;
      term = term * power(i, t.exponents[i]);
    }
    acc = acc + term;
  }
  return acc;
}

RationalFunction evaluate(const RationalFunction& f, std::span<const RationalFunction> values) {
  return evaluate(f.num(), values) / evaluate(f.den(), values);
}

}  // namespace expdiff

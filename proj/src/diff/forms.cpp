#include "expdiff/diff/forms.hpp"

#include <sstream>

namespace expdiff {

RationalFunction Form1::coeff(std::size_t gen) const {
  auto it = coeffs_.find(gen);
  return it == coeffs_.end() ? RationalFunction(nvars_) : it->second;
}

void Form1::set(std::size_t gen, const RationalFunction& c) {
  if (c.is_zero())
    coeffs_.erase(gen);
  else
    coeffs_[gen] = c;
}

Form1 Form1::operator-() const {
  Form1 r(nvars_);
  for (const auto& [g, c] : coeffs_) r.coeffs_[g] = -c;
  return r;
}

Form1 operator+(const Form1& a, const Form1& b) {
  Form1 r = a;
  if (r.nvars_ == 0) r.nvars_ = b.nvars_;
  for (const auto& [g, c] : b.coeffs_) r.set(g, r.coeff(g) + c);
  return r;
}

Form1 operator*(const RationalFunction& a, const Form1& w) {
  Form1 r(w.nvars());
  if (a.is_zero()) return r;
  for (const auto& [g, c] : w.coeffs_) r.coeffs_[g] = a * c;
  return r;
}

std::string Form1::to_string(std::span<const std::string> names) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : coeffs_) {
    os << (first ? "" : " + ") << "(" << c.to_string(names) << ")*d" << names[g];
    first = false;
  }
  return os.str();
}

RationalFunction Form2::coeff(std::size_t i, std::size_t j) const {
  if (i == j) return RationalFunction(nvars_);
  bool flip = i > j;
  auto it = coeffs_.find(flip ? Key{j, i} : Key{i, j});
  if (it == coeffs_.end()) return RationalFunction(nvars_);
  return flip ? -it->second : it->second;
}

void Form2::add(std::size_t i, std::size_t j, const RationalFunction& c) {
  if (i == j || c.is_zero()) return;
  Key k = i < j ? Key{i, j} : Key{j, i};
  RationalFunction v = i < j ? c : -c;
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) {
    coeffs_.emplace(k, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) coeffs_.erase(it);
}

Form2 operator+(const Form2& a, const Form2& b) {
  Form2 r = a;
  if (r.nvars_ == 0) r.nvars_ = b.nvars_;
  for (const auto& [k, c] : b.coeffs_) r.add(k.first, k.second, c);
  return r;
}

Form2 operator*(const RationalFunction& a, const Form2& w) {
  Form2 r(w.nvars());
  if (a.is_zero()) return r;
  for (const auto& [k, c] : w.coeffs_) r.coeffs_[k] = a * c;
  return r;
}

Form1 differential(const DiffField& field, const RationalFunction& f) {
  Form1 w(field.ngens());
  for (std::size_t z : field.nonconstant())
    if (f.involves(z)) w.set(z, f.derivative(z));
  return w;
}

Form2 exterior_d(const DiffField& field, const Form1& w) {
  Form2 r(field.ngens());
  for (const auto& [j, c] : w.coeffs())
    for (std::size_t i : field.nonconstant())
      if (i != j && c.involves(i)) r.add(i, j, c.derivative(i));
  return r;
}

Form2 wedge(const Form1& a, const Form1& b) {
  Form2 r(a.nvars());
  for (const auto& [i, ci] : a.coeffs())
    for (const auto& [j, cj] : b.coeffs()) r.add(i, j, ci * cj);
  return r;
}

RationalFunction contract(const DiffField& field, std::size_t der, const Form1& w) {
  RationalFunction acc = field.zero();
  for (const auto& [g, c] : w.coeffs()) acc += c * field.derivation_of(der, g);
  return acc;
}

Form1 contract(const DiffField& field, std::size_t der, const Form2& w) {
  Form1 r(field.ngens());
  for (const auto& [k, c] : w.coeffs()) {
    const auto& [i, j] = k;
    r.set(j, r.coeff(j) + c * field.derivation_of(der, i));
    r.set(i, r.coeff(i) - c * field.derivation_of(der, j));
  }
  return r;
}

Form1 lie_derivative(const DiffField& field, std::size_t der, const Form1& w) {
  return contract(field, der, exterior_d(field, w)) + differential(field, contract(field, der, w));
}

Form1 gamma_form(const DiffField& field, const RationalFunction& x, const RationalFunction& y) {
  return y.inverse() * differential(field, y) - differential(field, x);
}

}  // namespace expdiff

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "expdiff/cli/expr.hpp"
#include "expdiff/diff/field.hpp"
#include "expdiff/torus/torus.hpp"

namespace expdiff::testing {

inline RationalFunction rf(const std::string& text, const std::vector<std::string>& names) {
  return parse_expression(text, names);
}

inline MultiPoly poly(const std::string& text, const std::vector<std::string>& names) {
  return parse_polynomial(text, names);
}

// Generators named in `gens` (a trailing '!' marks a constant); one
// derivation per row of `ders`, each row giving D z_i as text.
inline DiffField field(const std::vector<std::string>& gens, const std::vector<std::vector<std::string>>& ders) {
  std::vector<Generator> g;
  std::vector<std::string> names;
  for (auto s : gens) {
    bool c = !s.empty() && s.back() == '!';
    if (c) s.pop_back();
    g.push_back({s, c});
    names.push_back(s);
  }
  RFMatrix table;
  std::vector<std::string> dnames;
  for (std::size_t j = 0; j < ders.size(); ++j) {
    RFVector row;
    for (const auto& e : ders[j]) row.push_back(parse_expression(e, names));
    table.push_back(std::move(row));
    dnames.push_back("D" + std::to_string(j + 1));
  }
  return DiffField(std::move(g), std::move(dnames), std::move(table));
}

inline RFVector rfs(const DiffField& f, const std::vector<std::string>& exprs) {
  RFVector out;
  for (const auto& e : exprs) out.push_back(parse_expression(e, f.gen_names()));
  return out;
}

inline TangentPoint point(const DiffField& f, const std::vector<std::string>& x, const std::vector<std::string>& y) {
  return TangentPoint(rfs(f, x), rfs(f, y));
}

}  // namespace expdiff::testing

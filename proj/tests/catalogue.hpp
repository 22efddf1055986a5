#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "expdiff/pregeom/pregeom.hpp"
#include "support.hpp"

namespace expdiff::testing {

// A Gamma-point built as a tower over Q(t), Dt = 1: each fresh coordinate
// takes an independent logarithm (t^k or an earlier exponential generator)
// and adjoins its exponential e with De = (Dx) e; dependent coordinates are
// integer combinations of earlier fresh ones shifted by constants; constant
// coordinates are rational or the constant generator c. By construction the
// constants are Q(c), so grk equals the number of fresh coordinates.
struct CatalogueEntry {
  std::string label;
  DiffField field;
  TangentPoint point;
  std::size_t fresh = 0;
  bool has_relation = false;
  bool exact_constants = true;
};

struct TowerBuilder {
  std::vector<std::string> gens{"t"};
  std::vector<std::string> ders{"1"};
  bool with_constant = false;
  // Logarithm pool: x text, D(x) text, exponential text.
  struct Log {
    std::string x, dx, e;
  };
  std::vector<Log> logs;
  std::vector<int> used_powers;
  std::vector<std::string> used_exps;

  std::string fresh_generator(const std::string& dx) {
    std::string name = "e" + std::to_string(gens.size());
    gens.push_back(name);
    ders.push_back("(" + dx + ")*" + name);
    return name;
  }

  // Returns false when no unused logarithm is available.
  bool add_fresh(std::mt19937& rng, std::string& x, std::string& y) {
    std::vector<std::pair<std::string, std::string>> options;
    for (int k = 1; k <= 3; ++k)
      if (std::find(used_powers.begin(), used_powers.end(), k) == used_powers.end())
        options.push_back({k == 1 ? "t" : "t^" + std::to_string(k),
                           k == 1 ? "1" : std::to_string(k) + "*t^" + std::to_string(k - 1)});
    for (std::size_t g = 1; g < gens.size(); ++g) {
      if (gens[g] == "c") continue;
      if (std::find(used_exps.begin(), used_exps.end(), gens[g]) != used_exps.end()) continue;
      options.push_back({gens[g], ders[g]});
    }
    if (options.empty()) return false;
    auto [lx, ldx] = options[rng() % options.size()];
    if (lx[0] == 't') {
      used_powers.push_back(lx == "t" ? 1 : lx.back() - '0');
    } else {
      used_exps.push_back(lx);
    }
    std::string e = fresh_generator(ldx);
    logs.push_back({lx, ldx, e});
    x = lx;
    y = e;
    return true;
  }

  void add_dependent(std::mt19937& rng, std::string& x, std::string& y) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::string xs, ys;
    bool any = false;
    for (const auto& l : logs) {
      int q = coef(rng);
      if (q == 0 || (any && rng() % 2)) continue;
      xs += (xs.empty() ? "" : " + ") + std::string("(") + std::to_string(q) + ")*(" + l.x + ")";
      ys += (ys.empty() ? "" : "*") + std::string("(") + l.e + ")^" + std::to_string(q);
      any = true;
    }
    if (!any) {
      xs = "(" + logs.back().x + ")";
      ys = logs.back().e;
    }
    switch (rng() % 3) {
      case 0: break;
      case 1: xs += " + 1/2"; break;
      default:
        with_constant = true;
        xs += " + c";
        ys += "*3";
    }
    x = xs;
    y = ys;
  }

  void add_constant(std::mt19937& rng, std::string& x, std::string& y) {
    static const char* xs[] = {"0", "2/3", "c", "-1"};
    static const char* ys[] = {"1", "5", "c", "c^2+1"};
    x = xs[rng() % 4];
    y = ys[rng() % 4];
    if (x == "c" || y.find('c') != std::string::npos) with_constant = true;
  }

  DiffField build() const {
    std::vector<std::string> gs = gens;
    std::vector<std::vector<std::string>> row{ders};
    if (with_constant) {
      gs.push_back("c!");
      row[0].push_back("0");
    }
    return field(gs, row);
  }
};

inline CatalogueEntry tower_entry(unsigned seed, std::size_t n) {
  std::mt19937 rng(seed);
  TowerBuilder b;
  std::vector<std::string> xs, ys;
  CatalogueEntry e;
  for (std::size_t i = 0; i < n; ++i) {
    std::string x, y;
    unsigned kind = rng() % 20;
    if (kind < 11 || (kind < 17 && b.logs.empty())) {
      if (b.add_fresh(rng, x, y)) {
        ++e.fresh;
      } else {
        b.add_dependent(rng, x, y);
        e.has_relation = true;
      }
    } else if (kind < 17) {
      b.add_dependent(rng, x, y);
      e.has_relation = true;
    } else {
      b.add_constant(rng, x, y);
      e.has_relation = true;
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  e.label = "tower-" + std::to_string(seed) + "-n" + std::to_string(n);
  e.field = b.build();
  e.point = point(e.field, xs, ys);
  return e;
}

// count Gamma-configurations, dimensions cycling through 1..4.
inline std::vector<CatalogueEntry> tower_catalogue(std::size_t count, unsigned seed0 = 1000) {
  std::vector<CatalogueEntry> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(tower_entry(seed0 + static_cast<unsigned>(k), 1 + k % 4));
  return out;
}

// x = (p, m p), y = (u, v) with Du = Dp u, Dv = m Dp v: v / u^m is a hidden
// constant.
inline CatalogueEntry hidden_constant_entry(int m, int power) {
  std::string p = power == 1 ? "t" : "t^" + std::to_string(power);
  std::string dp = power == 1 ? "1" : std::to_string(power) + "*t^" + std::to_string(power - 1);
  CatalogueEntry e;
  e.label = "hidden-" + std::to_string(m) + "-" + std::to_string(power);
  e.field = field({"t", "u", "v"}, {{"1", "(" + dp + ")*u", std::to_string(m) + "*(" + dp + ")*v"}});
  e.point = point(e.field, {p, std::to_string(m) + "*" + p}, {"u", "v"});
  e.fresh = 1;
  e.has_relation = true;
  e.exact_constants = false;
  return e;
}

// Tower points split into one or two coordinates per named point.
inline Config random_config(unsigned seed) {
  std::mt19937 rng(seed);
  TowerBuilder b;
  std::vector<std::string> xs, ys;
  std::size_t n = 2 + rng() % 4;
  for (std::size_t i = 0; i < n; ++i) {
    std::string x, y;
    unsigned kind = rng() % 10;
    if (kind < 6 || b.logs.empty()) {
      if (!b.add_fresh(rng, x, y)) b.add_dependent(rng, x, y);
    } else if (kind < 9) {
      b.add_dependent(rng, x, y);
    } else {
      b.add_constant(rng, x, y);
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  auto f = b.build();
  std::vector<NamedPoint> pts;
  for (std::size_t i = 0; i < n;) {
    std::size_t len = 1 + rng() % 2;
    len = std::min(len, n - i);
    std::vector<std::string> px(xs.begin() + i, xs.begin() + i + len), py(ys.begin() + i, ys.begin() + i + len);
    pts.push_back({"P" + std::to_string(i), point(f, px, py)});
    i += len;
  }
  return Config(f, pts);
}

}  // namespace expdiff::testing

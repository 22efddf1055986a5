// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "catalogue.hpp"
#include "cit_catalogue.hpp"
#include "expdiff/diff/forms.hpp"
#include "expdiff/error.hpp"
#include "expdiff/synthesis/synthesis.hpp"
#include "oracles.hpp"
#include "random_objects.hpp"
#include "variety_catalogue.hpp"

using namespace expdiff;
using namespace expdiff::testing;

namespace {

// Pinned thresholds.
constexpr std::size_t kCatalogueSize = 60;
constexpr double kCatalogueSeconds = 30.0;
constexpr std::size_t kMinRelationCases = 20;
constexpr int kLieTriples = 200;
constexpr unsigned kPregeomConfigs = 100;
constexpr std::size_t kMaxPregeomGenerators = 6;
constexpr unsigned kAmalgamPairs = 20;
constexpr int kRotundBound = 3;
constexpr std::uint64_t kHyperplaneTrials = 100;
constexpr int kMaxDegenerateDraws = 5;
constexpr std::size_t kAtypicalInstances = 10;
constexpr int kAtypicalBound = 3;
constexpr std::size_t kMinGoldenFiles = 10;

// Collects the first few failure notes of a criterion.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) { info_ += (info_.empty() ? "" : ", ") + s; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return info_;
    return std::to_string(failures_) + " failure(s): " + notes_;
  }

 private:
  int failures_ = 0;
  std::string notes_, info_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool all_constant(const DiffField& f, const TangentPoint& p) {
  for (const auto* part : {&p.x(), &p.y()})
    for (const auto& c : *part)
      if (!f.is_constant(c)) return false;
  return true;
}

void ax_schanuel(Verdict& v) {
  auto t0 = std::chrono::steady_clock::now();
  auto cat = tower_catalogue(kCatalogueSize);
  std::size_t max_n = 0;
  for (const auto& e : cat) {
    max_n = std::max(max_n, e.point.dim());
    v.require(e.field.nders() == 1, e.label + ": more than one derivation");
    v.require(gamma_member(e.field, e.point), e.label + ": not in Gamma");
    auto r = predim(e.field, e.point);
    v.require(r.delta >= 0, e.label + ": delta < 0");
    if (r.delta == 0) v.require(all_constant(e.field, e.point), e.label + ": delta = 0 on a non-constant point");
  }
  double secs = seconds_since(t0);
  v.require(secs < kCatalogueSeconds, "runtime " + std::to_string(secs) + " s");
  v.require(max_n <= 4, "dimension above 4");
  v.note(std::to_string(cat.size()) + " configurations");
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << secs << " s";
  v.note(os.str());
}

void witness_extraction(Verdict& v) {
  std::vector<CatalogueEntry> cases;
  for (auto& e : tower_catalogue(kCatalogueSize))
    if (e.has_relation) cases.push_back(std::move(e));
  std::size_t hidden = 0;
  for (int m = 1; m <= 4; ++m)
    for (int power = 1; power <= 2; ++power) {
      cases.push_back(hidden_constant_entry(m, power));
      ++hidden;
    }
  v.require(cases.size() >= kMinRelationCases, "only " + std::to_string(cases.size()) + " relation cases");
  int alarms = 0;
  for (const auto& e : cases) {
    try {
      auto s = schanuel_check(e.field, e.point);
      v.require(s.witness.has_value(), e.label + ": no witness");
      if (!s.witness) continue;
      v.require(e.field.is_constant(s.witness->linear) && e.field.is_constant(s.witness->character),
                e.label + ": witness is not constant");
      v.require(verify_witness(e.field, e.point, s.witness->m).has_value(), e.label + ": witness fails re-verification");
    } catch (const Error& err) {
      if (err.code() == ErrorCode::SoundnessAlarm) ++alarms;
      v.require(false, e.label + ": " + err.what());
    }
  }
  v.require(alarms == 0, std::to_string(alarms) + " soundness alarms");
  v.note(std::to_string(cases.size()) + " cases (" + std::to_string(hidden) + " hidden-constant)");
}

void forms_agreement(Verdict& v) {
  auto cat = tower_catalogue(kCatalogueSize);
  for (const auto& e : cat) {
    auto r = predim(e.field, e.point);
    v.require(forms_rank(e.field, e.point) == r.grk, e.label + ": forms_rank != grk");
    v.require(r.grk == grk_oracle(e.field, e.point), e.label + ": grk disagrees with the oracle");
  }
  v.note(std::to_string(cat.size()) + " configurations");
}

void lie_identities(Verdict& v) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < kLieTriples; ++trial) {
    auto du = random_rf(rng, 2, 1), dv = random_rf(rng, 2, 1);
    if (du.is_zero()) du = RationalFunction::constant(2, Q(1));
    if (dv.is_zero()) dv = RationalFunction::variable(2, 1);
    DiffField f({{"a", false}, {"b", false}}, {"D"}, {{du, dv}});
    auto a = random_rf(rng, 2), g = random_rf(rng, 2);
    if (g.is_zero()) g = RationalFunction::variable(2, 0);
    auto w = random_form(rng, f);
    const std::string tag = "triple " + std::to_string(trial);
    v.require(lie_derivative(f, 0, a * w) == f.apply(0, a) * w + a * lie_derivative(f, 0, w), tag + ": Leibniz");
    v.require(lie_derivative(f, 0, differential(f, g)) == differential(f, f.apply(0, g)), tag + ": L d = d D");
    v.require(exterior_d(f, g.inverse() * differential(f, g)).is_zero(), tag + ": d(dg/g) != 0");
  }
  v.note(std::to_string(kLieTriples) + " triples");
}

void rotund_oracle(Verdict& v) {
  auto cat = plane_catalogue();
  int statuses = 0;
  for (const auto& e : cat)
    for (RotundMode mode : {RotundMode::Plain, RotundMode::Perfect, RotundMode::Strong}) {
      const std::string tag = e.label + "/" + rotund_mode_name(mode);
      auto mine = is_rotund(e.variety, kRotundBound, mode);
      auto oracle = RotundOracle::decide(e.variety, kRotundBound, mode);
      ++statuses;
      v.require(mine.negative() == oracle.negative, tag + ": status differs");
      if (mine.negative() && oracle.negative) {
        v.require(mine.witness->image_dim == oracle.image_dim && mine.witness->required == oracle.required,
                  tag + ": violated inequality differs");
        if (!oracle.witness.empty()) v.require(mine.witness->map.rows() == oracle.witness, tag + ": witness differs");
      }
    }
  v.require(cat.size() == 12, "catalogue size " + std::to_string(cat.size()));
  v.note(std::to_string(cat.size()) + " varieties, " + std::to_string(statuses) + " verdicts");
}

void pregeometry_laws(Verdict& v) {
  long pairs = 0;
  for (unsigned seed = 0; seed < kPregeomConfigs; ++seed) {
    auto c = random_config(seed);
    const std::string tag = "config " + std::to_string(seed);
    Pregeometry pg(c);
    v.require(pg.size() <= kMaxPregeomGenerators, tag + ": too many generators");
    const SubMask all = pg.full();
    for (SubMask x = 0; x <= all; ++x) {
      SubMask h = pg.hull(x);
      v.require((h & x) == x && pg.is_self_sufficient(h) && pg.hull(h) == h, tag + ": hull");
      for (SubMask y = 0; y <= all; ++y) {
        ++pairs;
        v.require(pg.delta(x | y) + pg.delta(x & y) <= pg.delta(x) + pg.delta(y), tag + ": delta submodularity");
        v.require(pg.d(x | y) + pg.d(x & y) <= pg.d(x) + pg.d(y), tag + ": d submodularity");
        if ((x & y) == x) v.require(pg.d(x) <= pg.d(y), tag + ": monotonicity");
      }
      SubMask cl = pg.closure(x);
      for (std::size_t a = 0; a < pg.size(); ++a) {
        const SubMask ba = SubMask{1} << a;
        long da = pg.d(ba, x);
        v.require(da == 0 || da == 1, tag + ": d(a/X) outside {0, 1}");
        for (std::size_t b = 0; b < pg.size(); ++b) {
          const SubMask bb = SubMask{1} << b;
          if ((pg.closure(x | bb) & ba) && !(cl & ba)) v.require((pg.closure(x | ba) & bb) != 0, tag + ": exchange");
        }
      }
    }
  }
  v.note(std::to_string(kPregeomConfigs) + " configurations, " + std::to_string(pairs) + " subset pairs");
}

void amalgamation(Verdict& v) {
  for (unsigned k = 0; k < kAmalgamPairs; ++k) {
    auto left = random_config(900 + k), right = random_config(950 + k);
    Pregeometry pl(left), pr(right);
    const std::string tag = "pair " + std::to_string(k);
    try {
      auto r = free_amalgam(left, right, "");
      v.require(r.grk_total == pl.grk(pl.full()) + pr.grk(pr.full()), tag + ": grk not additive");
      v.require(r.right_self_sufficient, tag + ": second factor not self-sufficient");
    } catch (const Error& e) {
      v.require(false, tag + ": " + e.what());
    }
  }
  v.note(std::to_string(kAmalgamPairs) + " pairs");
}

void hyperplanes(Verdict& v) {
  auto f = field({"t"}, {{"1"}});
  auto h = equations_variety(f, 2, {"x1*x2 - y1 - y2"});
  v.require(h.dim() == 3, "test variety does not have dimension 3");
  v.require(is_rotund(h, kRotundBound).status == RotundStatus::RotundUpToBound, "test variety is not rotund");
  int degenerate = 0;
  for (std::uint64_t seed = 0; seed < kHyperplaneTrials; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    try {
      auto s = intersect_generic_hyperplane(h, seed);
      v.require(s.dim() == 2, tag + ": section dimension " + std::to_string(s.dim()));
      v.require(is_rotund(s, kRotundBound).status == RotundStatus::RotundUpToBound, tag + ": section not rotund");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Degenerate)
        ++degenerate;
      else
        v.require(false, tag + ": " + e.what());
    }
  }
  v.require(degenerate <= kMaxDegenerateDraws, std::to_string(degenerate) + " degenerate draws");
  v.note(std::to_string(kHyperplaneTrials) + " trials, " + std::to_string(degenerate) + " degenerate");
}

void synthesis(Verdict& v) {
  auto f = field({"t"}, {{"1"}});
  auto line = extend_derivation(param_variety(f, {"s"}, {"t"}, {"s"}));
  v.require(line.parameter_derivatives[0] == rf("s", {"t", "s"}), "x = t: D s != s");
  v.require(line.uniqueness_rank == 0 && !line.degenerate(), "x = t: not unique");
  v.require(gamma_member(line.field, line.point), "x = t: not in Gamma");

  auto diag = param_variety(f, {"s"}, {"s"}, {"s"});
  v.require(is_rotund(diag, kRotundBound, RotundMode::Perfect).status == RotundStatus::PerfectUpToBound,
            "diagonal is not perfectly rotund");
  auto d = extend_derivation(diag);
  v.require(d.degenerate() && d.parameter_derivatives[0].is_zero(), "diagonal: not DEGENERATE");
  v.require(gamma_member(d.field, d.point), "diagonal: not in Gamma");

  auto sq = extend_derivation(param_variety(f, {"s1", "s2"}, {"t", "t^2"}, {"s1", "s2"}));
  std::vector<std::string> names{"t", "s1", "s2"};
  v.require(sq.parameter_derivatives[0] == rf("s1", names) && sq.parameter_derivatives[1] == rf("2*t*s2", names),
            "x = (t, t^2): wrong D s");
  v.require(sq.uniqueness_rank == 0 && !sq.degenerate(), "x = (t, t^2): not unique");
  v.require(gamma_member(sq.field, sq.point), "x = (t, t^2): not in Gamma");
  v.note("3 examples");
}

void weak_cit(Verdict& v) {
  auto f = cit_field();
  FactorBase tbase(1, {poly("t", {"t"})});
  auto diag = analyze_intersection(f, y_ideal(f, 2, {"y1 - y2"}), {rf("t", {"t"}), rf("t", {"t"})}, tbase);
  v.require(diag.atypicality == 1, "diagonal: atypicality != 1");
  auto resolved = search_bounded_dependencies(f, diag, 1);
  v.require(resolved.status == CitStatus::AtypicalResolved && resolved.witness && resolved.witness->rank() == 1 &&
                resolved.witness->contains({1, -1}),
            "diagonal: not resolved at N = 1 by <(1, -1)>");

  auto base = cit_base();
  auto typical = analyze_intersection(f, y_ideal(f, 3, {"y3 - y1*y2"}),
                                      {rf("t", {"t"}), rf("t + 1", {"t"}), rf("t*(t + 1)", {"t"})}, base);
  v.require(typical.status == CitStatus::Typical && typical.dim_u == 2 && typical.dim_coset == 2 && typical.td == 1,
            "{y3 = y1 y2}: not TYPICAL with dims (2, 2, 1)");

  auto insts = atypical_instances(kAtypicalInstances, 41);
  for (const auto& inst : insts) {
    v.require(inst.x.size() <= 3, inst.label + ": n > 3");
    auto r = analyze_intersection(f, inst.u, inst.x, base);
    v.require(r.atypicality >= 1, inst.label + ": not atypical");
    auto s = search_bounded_dependencies(f, r, kAtypicalBound);
    v.require(s.status == CitStatus::AtypicalResolved, inst.label + ": unresolved at N = 3");
  }
  v.note("diagonal, typical, " + std::to_string(insts.size()) + " atypical instances");
}

std::pair<std::string, int> run_shell(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

void golden_files(Verdict& v) {
  std::size_t count = 0;
  std::vector<std::filesystem::path> inputs;
  for (const auto& entry : std::filesystem::directory_iterator(EXPDIFF_GOLDEN_DIR))
    if (entry.path().extension() == ".in") inputs.push_back(entry.path());
  std::sort(inputs.begin(), inputs.end());
  for (const auto& in : inputs) {
    std::ifstream file(in);
    std::string first;
    std::getline(file, first);
    const std::string prefix = "# args: ";
    if (first.rfind(prefix, 0) != 0) {
      v.require(false, in.filename().string() + ": no args line");
      continue;
    }
    const std::string args = first.substr(prefix.size());
    std::vector<std::string> reports;
    for (int threads : {1, 1, 4, 4}) {
      auto [out, code] = run_shell("OMP_NUM_THREADS=" + std::to_string(threads) + " " + quoted(EXPDIFF_CLI) + " " + args +
                                   " --threads " + std::to_string(threads) + " " + quoted(in.string()));
      reports.push_back(out + "exit: " + std::to_string(code) + "\n");
    }
    std::ifstream want_file(std::filesystem::path(in).replace_extension(".out"));
    std::stringstream want;
    want << want_file.rdbuf();
    bool same = std::all_of(reports.begin(), reports.end(), [&](const std::string& r) { return r == reports[0]; });
    v.require(same, in.filename().string() + ": reports differ between runs");
    v.require(reports[0] == want.str(), in.filename().string() + ": report differs from the stored one");
    ++count;
  }
  v.require(count >= kMinGoldenFiles, "only " + std::to_string(count) + " golden files");
  v.note(std::to_string(count) + " files x 4 runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"Ax/Schanuel catalogue", ax_schanuel},
      {"witness extraction", witness_extraction},
      {"forms rank equals group rank", forms_agreement},
      {"Lie derivative identities", lie_identities},
      {"rotundity oracle equivalence", rotund_oracle},
      {"pregeometry laws", pregeometry_laws},
      {"free amalgamation", amalgamation},
      {"generic hyperplanes", hyperplanes},
      {"solution synthesis", synthesis},
      {"weak CIT", weak_cit},
      {"CLI golden files", golden_files},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("uncaught: ") + e.what());
    }
    all = all && v.ok();
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (v.ok() ? "PASS" : "FAIL") << " ("
              << v.summary() << ") [" << std::fixed << std::setprecision(2) << seconds_since(t0) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}

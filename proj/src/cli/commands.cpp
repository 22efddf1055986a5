#include "expdiff/cli/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "expdiff/diff/forms.hpp"
#include "expdiff/error.hpp"
#include "expdiff/synthesis/synthesis.hpp"

namespace expdiff {

namespace {

class Report {
 public:
  void add(const std::string& key, const std::string& value) { os_ << key << ": " << value << "\n"; }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
  template <class T>
    requires std::is_integral_v<T>
  void add(const std::string& key, T value) {
    add(key, std::to_string(value));
  }
  std::string text() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

// Exit status carried out of a command body.
struct Outcome {
  int exit_code = 0;
};

std::string name_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "]";
}

std::string lattice_text(const IntLattice& l) { return l.to_string(); }

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) fail(ErrorCode::InvalidArgument, std::string("missing --") + flag);
  return value;
}

GenMask mask_for(const DiffField& field, const Substructure& s) {
  GenMask m(field.ngens(), false);
  for (const auto& g : s.generators) m[*field.generator_index(g)] = true;
  return m;
}

// The configuration generated by one substructure: its generators plus the
// constant ones, every point living over them, and the listed subs.
Config restrict_to(const InputModel& model, const Substructure& s, const std::vector<const Substructure*>& keep) {
  const DiffField& f = model.field;
  std::vector<bool> kept(f.ngens(), false);
  for (std::size_t i = 0; i < f.ngens(); ++i) kept[i] = f.is_constant_generator(i);
  for (const auto& g : s.generators) kept[*f.generator_index(g)] = true;
  std::vector<int> map(f.ngens(), -1);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < f.ngens(); ++i)
    if (kept[i]) {
      map[i] = static_cast<int>(gens.size());
      gens.push_back(f.generators()[i]);
    }
  const std::size_t k = gens.size();
  auto lives_here = [&](const RationalFunction& r) {
    for (std::size_t i = 0; i < f.ngens(); ++i)
      if (!kept[i] && r.involves(i)) return false;
    return true;
  };
  RFMatrix table;
  for (std::size_t j = 0; j < f.nders(); ++j) {
    RFVector row;
    for (std::size_t i = 0; i < f.ngens(); ++i) {
      if (!kept[i]) continue;
      const RationalFunction& d = f.derivation_of(j, i);
      if (!lives_here(d))
        fail(ErrorCode::InvalidArgument, "sub '" + s.name + "' is not closed under " + f.derivation_names()[j]);
      row.push_back(d.remapped(k, map));
    }
    table.push_back(std::move(row));
  }
  DiffField rf(gens, f.derivation_names(), std::move(table));

  std::vector<NamedPoint> points;
  for (const auto& p : model.points) {
    if (!p.x) continue;
    bool inside = std::all_of(p.x->begin(), p.x->end(), lives_here) && std::all_of(p.y.begin(), p.y.end(), lives_here);
    if (!inside) continue;
    RFVector x, y;
    for (const auto& c : *p.x) x.push_back(c.remapped(k, map));
    for (const auto& c : p.y) y.push_back(c.remapped(k, map));
    points.push_back({p.name, TangentPoint(std::move(x), std::move(y))});
  }
  std::vector<Substructure> subs;
  for (const Substructure* sub : keep) {
    for (const auto& g : sub->generators)
      if (!kept[*f.generator_index(g)])
        fail(ErrorCode::InvalidArgument, "sub '" + sub->name + "' is not contained in '" + s.name + "'");
    subs.push_back(*sub);
  }
  return Config(std::move(rf), std::move(points), std::move(subs));
}

RotundMode parse_mode(const std::string& m) {
  if (m == "plain") return RotundMode::Plain;
  if (m == "perfect") return RotundMode::Perfect;
  if (m == "strong") return RotundMode::Strong;
  fail(ErrorCode::InvalidArgument, "unknown rotundity mode '" + m + "'");
}

const char* projection_name(Projection p) {
  switch (p) {
    case Projection::Both: return "both";
    case Projection::Linear: return "linear";
    case Projection::Torus: return "torus";
  }
  return "?";
}

void add_equations(Report& r, const TSVariety& v) {
  auto names = v.coordinate_names();
  r.add("equations", v.equations().size());
  for (const auto& e : v.equations()) r.add("eq", e.to_string(names));
}

using Body = std::function<Outcome(Report&, const InputModel&, const CommandOptions&)>;

Outcome gamma_check(Report& r, const InputModel& m, const CommandOptions& o) {
  const PointDecl& p = m.point(required(o.point, "point"));
  TangentPoint tp = p.tangent();
  bool in = gamma_member(m.field, tp);
  r.add("point", p.name);
  r.add("n", p.n);
  r.add("in_gamma", in);
  if (!in)
    for (std::size_t i = 0; i < p.n; ++i)
      if (!gamma_member(m.field, TangentPoint({tp.x()[i]}, {tp.y()[i]}))) {
        r.add("failing_coordinate", i + 1);
        break;
      }
  return {in ? 0 : 1};
}

Outcome schanuel(Report& r, const InputModel& m, const CommandOptions& o) {
  const PointDecl& p = m.point(required(o.point, "point"));
  TangentPoint tp = p.tangent();
  auto v = schanuel_check(m.field, tp);
  const auto& names = m.field.gen_names();
  r.add("point", p.name);
  r.add("n", v.n);
  r.add("td", v.td);
  r.add("rk_jac", v.rk_jac);
  r.add("relations", lattice_text(v.relations));
  r.add("trigger", v.trigger);
  if (v.witness) {
    r.add("witness", format_vector(v.witness->m));
    r.add("witness_linear", format_expression(v.witness->linear, names));
    r.add("witness_character", format_expression(v.witness->character, names));
    r.add("witness_verified", verify_witness(m.field, tp, v.witness->m).has_value());
  }
  return {0};
}

Outcome predim_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const PointDecl& p = m.point(required(o.point, "point"));
  GenMask over;
  if (!o.over.empty()) over = mask_for(m.field, m.sub(o.over));
  auto rep = predim(m.field, p.tangent(), over);
  r.add("point", p.name);
  if (!o.over.empty()) r.add("over", o.over);
  r.add("n", rep.n);
  r.add("td", rep.td);
  r.add("rk_jac", rep.rk_jac);
  r.add("relations", lattice_text(rep.relations));
  r.add("grk", rep.grk);
  r.add("delta", rep.delta);
  IntMatrix ws;
  for (const auto& w : rep.witnesses) ws.push_back(w.m);
  r.add("witnesses", format_matrix(ws));
  return {0};
}

Outcome forms_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const PointDecl& p = m.point(required(o.point, "point"));
  TangentPoint tp = p.tangent();
  std::size_t fr = forms_rank(m.field, tp);
  auto rep = predim(m.field, tp);
  r.add("point", p.name);
  r.add("forms_rank", fr);
  r.add("grk", rep.grk);
  r.add("agree", fr == rep.grk);
  return {0};
}

Outcome hull_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const Substructure& s = m.sub(required(o.sub, "sub"));
  Pregeometry pg(m.config());
  SubMask x = pg.mask_of(s.generators);
  SubMask h = pg.hull(x);
  r.add("sub", s.name);
  r.add("hull", name_list(pg.names_of(h)));
  r.add("delta", pg.delta(h));
  r.add("d", pg.d(x));
  r.add("self_sufficient", pg.is_self_sufficient(h));
  return {0};
}

Outcome selfsuff_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const Substructure& s = m.sub(required(o.sub, "sub"));
  Pregeometry pg(m.config());
  SubMask a = pg.mask_of(s.generators);
  auto bad = pg.self_sufficiency_violation(a);
  r.add("sub", s.name);
  r.add("self_sufficient", !bad.has_value());
  if (bad) {
    r.add("violation", name_list(pg.names_of(*bad)));
    r.add("delta_violation", pg.delta(*bad));
    r.add("delta_intersection", pg.delta(*bad & a));
  }
  return {bad ? 1 : 0};
}

Outcome d_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const Substructure& s = m.sub(required(o.sub, "sub"));
  Pregeometry pg(m.config());
  SubMask x = pg.mask_of(s.generators);
  SubMask over = o.over.empty() ? 0 : pg.mask_of(m.sub(o.over).generators);
  r.add("sub", s.name);
  if (!o.over.empty()) r.add("over", o.over);
  r.add("d", pg.d(x, over));
  r.add("closure", name_list(pg.names_of(pg.closure(x | over))));
  return {0};
}

Outcome amalgam_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const Substructure& ls = m.sub(required(o.left, "left"));
  const Substructure& rs = m.sub(required(o.right, "right"));
  std::vector<const Substructure*> keep;
  if (!o.over.empty()) keep.push_back(&m.sub(o.over));
  Config left = restrict_to(m, ls, keep), right = restrict_to(m, rs, keep);
  auto rep = free_amalgam(left, right, o.over);
  r.add("left", ls.name);
  r.add("right", rs.name);
  r.add("over", o.over.empty() ? std::string("constants") : o.over);
  r.add("generators", name_list(rep.amalgam.field().gen_names()));
  for (const auto& [from, to] : rep.renamed) r.add("renamed", from + " -> " + to);
  r.add("points", rep.amalgam.points().size());
  r.add("grk_total", rep.grk_total);
  r.add("grk_left", rep.grk_left);
  r.add("grk_right", rep.grk_right);
  r.add("grk_base", rep.grk_base);
  r.add("delta_total", rep.delta_total);
  r.add("right_self_sufficient", rep.right_self_sufficient);
  return {0};
}

Outcome free_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const VarietyDecl& vd = m.variety(required(o.variety, "variety"));
  TSVariety v = vd.build(m.field, o.budget);
  auto f = is_free(v, o.bound, o.absolute, default_exec(), o.budget);
  r.add("variety", vd.name);
  r.add("mode", o.absolute ? "absolute" : "relative");
  r.add("bound", o.bound);
  r.add("dim", v.dim());
  r.add("free", f.free);
  if (f.witness) {
    r.add("witness", format_vector(*f.witness));
    r.add("collapsed", projection_name(f.collapsed));
  }
  return {f.free ? 0 : 1};
}

Outcome rotund_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const VarietyDecl& vd = m.variety(required(o.variety, "variety"));
  TSVariety v = vd.build(m.field, o.budget);
  auto verdict = is_rotund(v, o.bound, parse_mode(o.mode), default_exec(), o.budget);
  r.add("variety", vd.name);
  r.add("mode", rotund_mode_name(verdict.mode));
  r.add("bound", verdict.bound);
  r.add("dim", verdict.dim);
  r.add("maps_checked", verdict.maps_checked);
  r.add("status", rotund_status_name(verdict.status));
  if (verdict.witness) {
    r.add("witness", format_matrix(verdict.witness->map.rows()));
    r.add("violation", verdict.witness->describe());
  }
  r.add("irreducible_assumed", verdict.irreducible_assumed);
  return {verdict.negative() ? 1 : 0};
}

Outcome hyperplane_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const VarietyDecl& vd = m.variety(required(o.variety, "variety"));
  TSVariety v = vd.build(m.field, o.budget);
  r.add("variety", vd.name);
  r.add("seed", o.seed);
  std::vector<long> p = hyperplane_coefficients(v.n(), o.seed);
  r.add("coefficients", format_vector(IntVec(p.begin(), p.end())));
  r.add("dim", v.dim());
  try {
    TSVariety section = intersect_generic_hyperplane(v, o.seed, o.budget);
    auto verdict = is_rotund(section, o.bound, RotundMode::Plain, default_exec(), o.budget);
    r.add("status", "SECTION");
    r.add("section_dim", section.dim());
    r.add("section_rotundity", rotund_status_name(verdict.status));
    add_equations(r, section);
    return {0};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Degenerate) throw;
    r.add("status", "DEGENERATE");
    r.add("reason", e.what());
    return {1};
  }
}

Outcome rabinovich_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const VarietyDecl& vd = m.variety(required(o.variety, "variety"));
  if (o.polys.empty()) fail(ErrorCode::InvalidArgument, "missing --poly");
  TSVariety v = vd.build(m.field, o.budget);
  auto names = v.coordinate_names();
  std::vector<MultiPoly> fs;
  for (const auto& text : o.polys) {
    RationalFunction f = parse_expression(text, names);
    if (!f.is_polynomial()) fail(ErrorCode::InvalidArgument, "--poly '" + text + "' is not a polynomial");
    fs.push_back(f.num());
  }
  r.add("variety", vd.name);
  r.add("dim", v.dim());
  try {
    TSVariety w = rabinovich(v, fs, o.budget);
    r.add("status", "EMBEDDED");
    r.add("n", w.n());
    r.add("new_dim", w.dim());
    if (w.has_equations()) add_equations(r, w);
    return {0};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FVanishes) throw;
    r.add("status", "F_VANISHES");
    r.add("reason", e.what());
    return {1};
  }
}

Outcome synthesize_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const VarietyDecl& vd = m.variety(required(o.variety, "variety"));
  TSVariety v = vd.build(m.field, o.budget);
  auto verdict = is_rotund(v, o.bound, RotundMode::Perfect, default_exec(), o.budget);
  auto s = extend_derivation(v, 0, verdict);
  const auto& params = v.parametrization().params;
  auto names = s.field.gen_names();
  std::vector<std::string> forced, flagged;
  for (std::size_t i : s.forced_constant) forced.push_back(params[i]);
  for (std::size_t i : s.constant_parameters) flagged.push_back(params[i]);
  r.add("variety", vd.name);
  r.add("rotundity", rotund_status_name(verdict.status));
  if (verdict.witness) r.add("rotundity_violation", verdict.witness->describe());
  r.add("bound", o.bound);
  r.add("derivation", m.field.derivation_names()[0]);
  for (std::size_t i = 0; i < params.size(); ++i)
    r.add("D(" + params[i] + ")", format_expression(s.parameter_derivatives[i], names));
  r.add("uniqueness_rank", s.uniqueness_rank);
  r.add("degenerate", s.degenerate());
  r.add("forced_constant", name_list(forced));
  r.add("constant_parameters", name_list(flagged));
  r.add("in_gamma", gamma_member(s.field, s.point));
  if (s.degenerate())
    r.add("open_question", "whether DEGENERATE outcomes can be excluded by strengthening rotundity hypotheses");
  return {s.degenerate() ? 1 : 0};
}

Outcome weakcit_cmd(Report& r, const InputModel& m, const CommandOptions& o) {
  const VarietyDecl& vd = m.variety(required(o.variety, "variety"));
  const PointDecl& p = m.point(required(o.point, "point"));
  const BaseDecl& bd = m.base(required(o.base, "base"));
  const std::size_t n = vd.n, k = m.field.ngens();
  if (p.n != n) fail(ErrorCode::InvalidArgument, "point and variety dimensions differ");
  if (vd.equations.empty()) fail(ErrorCode::InvalidArgument, "weakcit needs U given by equations");
  // U lives on the torus: drop the x-block.
  std::vector<int> into(2 * n + k, 0);
  for (std::size_t i = 0; i < n; ++i) into[n + i] = static_cast<int>(i);
  for (std::size_t g = 0; g < k; ++g) into[2 * n + g] = static_cast<int>(n + g);
  std::vector<MultiPoly> eqs;
  for (const auto& e : vd.equations) {
    for (std::size_t i = 0; i < n; ++i)
      if (e.involves(i)) fail(ErrorCode::InvalidArgument, "U must not involve x-coordinates");
    eqs.push_back(e.remapped(n + k, into));
  }
  FactorBase base(k, bd.elements);
  auto rep = analyze_intersection(m.field, Ideal(n + k, eqs), p.y, base, o.budget);
  rep = search_bounded_dependencies(m.field, rep, o.bound);
  r.add("variety", vd.name);
  r.add("point", p.name);
  r.add("base", bd.name);
  r.add("n", rep.n);
  r.add("dim_u", rep.dim_u);
  r.add("dim_coset", rep.dim_coset);
  r.add("td", rep.td);
  r.add("atypicality", rep.atypicality);
  r.add("dependencies", lattice_text(rep.dependencies));
  r.add("status", cit_status_name(rep.status));
  if (rep.status != CitStatus::Typical) r.add("bound", rep.bound);
  if (rep.witness) {
    r.add("witness", lattice_text(*rep.witness));
    r.add("witness_codim", rep.witness->rank());
  }
  r.add("generic_point_assumed", rep.generic_point_assumed);
  return {rep.status == CitStatus::AtypicalUnresolved ? 1 : 0};
}

Outcome usp_cmd(Report& r, const InputModel& m, const CommandOptions&) {
  std::vector<UspItem> batch;
  std::vector<std::string> names;
  for (const auto& p : m.points) {
    if (!p.x) continue;
    auto dot = p.name.find('.');
    batch.push_back({dot == std::string::npos ? p.name : p.name.substr(0, dot), p.tangent()});
    names.push_back(p.name);
  }
  auto res = usp_collect(m.field, batch);
  r.add("items", batch.size());
  r.add("families", res.witnesses.size());
  for (const auto& [family, lattices] : res.witnesses) {
    r.add("family", family);
    r.add("witness_lattices", lattices.size());
    for (const auto& l : lattices) r.add("lattice", lattice_text(l));
  }
  bool alarm = false;
  for (const auto& [i, msg] : res.errors) {
    r.add("item_error", names[i] + ": " + msg);
    alarm = alarm || msg.rfind(error_code_name(ErrorCode::SoundnessAlarm), 0) == 0;
  }
  return {alarm ? 3 : 0};
}

const std::map<std::string, Body>& commands() {
  static const std::map<std::string, Body> table{
      {"gamma-check", gamma_check}, {"schanuel", schanuel},        {"predim", predim_cmd},
      {"forms", forms_cmd},         {"hull", hull_cmd},            {"selfsuff", selfsuff_cmd},
      {"d", d_cmd},                 {"amalgam", amalgam_cmd},      {"free", free_cmd},
      {"rotund", rotund_cmd},       {"hyperplane", hyperplane_cmd}, {"rabinovich", rabinovich_cmd},
      {"synthesize", synthesize_cmd}, {"weakcit", weakcit_cmd},    {"usp", usp_cmd},
  };
  return table;
}

CommandResult error_result(const std::string& command, const Error& e) {
  Report r;
  r.add("command", command);
  r.add("error", error_code_name(e.code()));
  if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
    r.add("line", pe->line());
    r.add("column", pe->column());
    r.add("reason", pe->reason());
  } else {
    r.add("reason", e.what());
  }
  return {r.text(), e.code() == ErrorCode::SoundnessAlarm ? 3 : 2};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, body] : commands()) out.push_back(name);
    out.push_back("selftest");
    return out;
  }();
  return names;
}

CommandResult run_command(const std::string& command, const InputModel& model, const CommandOptions& options) {
  if (command == "selftest") return run_selftest();
  auto it = commands().find(command);
  if (it == commands().end()) return error_result(command, Error(ErrorCode::InvalidArgument, "unknown command"));
  try {
    Report r;
    r.add("command", command);
    Outcome out = it->second(r, model, options);
    return {r.text(), out.exit_code};
  } catch (const Error& e) {
    return error_result(command, e);
  } catch (const std::exception& e) {
    return error_result(command, Error(ErrorCode::InvalidArgument, e.what()));
  }
}

CommandResult run_on_text(const std::string& command, std::string_view text, const CommandOptions& options) {
  if (command == "selftest") return run_selftest();
  InputModel model;
  try {
    model = parse_input(text);
  } catch (const Error& e) {
    return error_result(command, e);
  }
  return run_command(command, model, options);
}

namespace {

constexpr const char* kSelftestInput = R"(field
  gen t
  gen u
  der D
  D t = 1
  D u = u
point P in Gm^2
  x = (t, 2*t)
  y = (u, u^2)
point Q in Gm^2
  x = (t, 0)
  y = (u, 1)
variety Diag in T(Gm^2)
  eq x1 - x2
  eq y1 - y2
variety Line in T(Gm^1)
  param s
  x1 = t
  y1 = s
)";

struct SelfCheck {
  const char* name;
  const char* command;
  CommandOptions options;
  int exit_code;
  std::vector<std::string> lines;
};

}  // namespace

CommandResult run_selftest() {
  CommandOptions point_p, point_q, diag, line;
  point_p.point = "P";
  point_q.point = "Q";
  diag.variety = "Diag";
  diag.bound = 2;
  line.variety = "Line";
  std::vector<SelfCheck> checks{
      {"gamma", "gamma-check", point_q, 0, {"in_gamma: true"}},
      {"schanuel_witness", "schanuel", point_p, 0, {"trigger: true", "witness: [2, -1]"}},
      {"diagonal_not_rotund", "rotund", diag, 1, {"status: NOT_ROTUND", "witness: [[1, -1]]"}},
      {"synthesis", "synthesize", line, 0, {"D(s): s", "uniqueness_rank: 0"}},
  };
  Report r;
  r.add("command", "selftest");
  InputModel model = parse_input(kSelftestInput);
  bool all = format_input(parse_input(format_input(model))) == format_input(model) &&
             parse_input(format_input(model)) == model;
  r.add("round_trip", all ? "pass" : "fail");
  for (const auto& c : checks) {
    CommandResult res = run_command(c.command, model, c.options);
    bool ok = res.exit_code == c.exit_code;
    for (const auto& l : c.lines) ok = ok && res.report.find(l + "\n") != std::string::npos;
    r.add(c.name, ok ? "pass" : "fail");
    all = all && ok;
  }
  r.add("all_passed", all);
  return {r.text(), all ? 0 : 1};
}

}  // namespace expdiff

#include "expdiff/cli/input.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "expdiff/error.hpp"

namespace expdiff {

TangentPoint PointDecl::tangent() const {
  if (!x) fail(ErrorCode::InvalidArgument, "point '" + name + "' has no x-part");
  return TangentPoint(*x, y);
}

TSVariety VarietyDecl::build(const DiffField& field, const GroebnerBudget& budget) const {
  if (param && !equations.empty()) return TSVariety::from_both(field, n, equations, *param, budget);
  if (param) return TSVariety::from_parametrization(field, *param);
  return TSVariety::from_equations(field, n, equations, budget);
}

namespace {

template <class T>
const T& find_named(const std::vector<T>& items, const std::string& name, const char* kind) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& t) { return t.name == name; });
  if (it == items.end()) fail(ErrorCode::InvalidArgument, std::string("no ") + kind + " named '" + name + "'");
  return *it;
}

}  // namespace

const PointDecl& InputModel::point(const std::string& name) const { return find_named(points, name, "point"); }
const VarietyDecl& InputModel::variety(const std::string& name) const {
  return find_named(varieties, name, "variety");
}
const Substructure& InputModel::sub(const std::string& name) const { return find_named(subs, name, "sub"); }
const BaseDecl& InputModel::base(const std::string& name) const { return find_named(bases, name, "base"); }

Config InputModel::config() const {
  std::vector<NamedPoint> ps;
  for (const auto& p : points)
    if (p.x) ps.push_back({p.name, p.tangent()});
  return Config(field, std::move(ps), subs);
}

namespace {

const std::set<std::string> kKeywords{"field", "gen", "der", "const", "point", "variety",
                                      "base",  "sub", "eq",  "param", "in"};

std::vector<std::string> coordinate_names(std::size_t n, const std::vector<std::string>& gens) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) out.push_back("y" + std::to_string(i));
  out.insert(out.end(), gens.begin(), gens.end());
  return out;
}

// One source line with a read position; columns are 1-based.
class Line {
 public:
  Line(std::string text, std::size_t number) : text_(std::move(text)), number_(number) {
    auto hash = text_.find('#');
    if (hash != std::string::npos) text_.resize(hash);
  }

  std::size_t number() const { return number_; }
  std::size_t column() const { return pos_ + 1; }

  [[noreturn]] void error(const std::string& why) const { throw ParseError(number_, column(), why); }
  [[noreturn]] void error_at(std::size_t column, const std::string& why) const {
    throw ParseError(number_, column, why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_end() {
    if (!at_end()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  std::optional<std::string> try_ident() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    char c = text_[pos_];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }
  std::string ident(const char* what) {
    auto id = try_ident();
    if (!id) error(std::string("expected ") + what);
    return *id;
  }
  void keyword(const std::string& word) {
    skip_ws();
    std::size_t at = column();
    auto id = try_ident();
    if (!id || *id != word) error_at(at, "expected '" + word + "'");
  }
  std::size_t integer(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error(std::string("expected ") + what);
    if (pos_ - start > 3) error_at(start + 1, std::string(what) + " too large");
    return std::stoul(text_.substr(start, pos_ - start));
  }
  void literal(std::string_view word) {
    skip_ws();
    if (text_.compare(pos_, word.size(), word) != 0) error("expected '" + std::string(word) + "'");
    pos_ += word.size();
  }

  // Remaining text and the column it starts at.
  std::pair<std::string, std::size_t> rest() {
    skip_ws();
    std::pair<std::string, std::size_t> out{text_.substr(pos_), column()};
    pos_ = text_.size();
    return out;
  }

  // Comma-separated pieces of the rest of the line, each with its column.
  std::vector<std::pair<std::string, std::size_t>> comma_list() {
    std::vector<std::pair<std::string, std::size_t>> out;
    if (at_end()) return out;
    std::size_t start = pos_;
    int depth = 0;
    for (; pos_ <= text_.size(); ++pos_) {
      char c = pos_ < text_.size() ? text_[pos_] : ',';
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        out.push_back(piece(start, pos_));
        start = pos_ + 1;
      }
    }
    pos_ = text_.size();
    return out;
  }

  // Parenthesized comma list: "(a, b)".
  std::vector<std::pair<std::string, std::size_t>> tuple() {
    expect('(');
    std::size_t start = pos_;
    int depth = 0;
    std::vector<std::pair<std::string, std::size_t>> out;
    for (; pos_ < text_.size(); ++pos_) {
      char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) break;
      if (c == ',' && depth == 0) {
        out.push_back(piece(start, pos_));
        start = pos_ + 1;
      }
    }
    if (pos_ >= text_.size()) error("expected ')'");
    auto last = piece(start, pos_);
    if (!last.first.empty() || !out.empty()) out.push_back(last);
    ++pos_;
    for (const auto& [text, col] : out)
      if (text.empty()) error_at(col, "empty tuple entry");
    return out;
  }

 private:
  std::pair<std::string, std::size_t> piece(std::size_t from, std::size_t to) const {
    while (from < to && std::isspace(static_cast<unsigned char>(text_[from]))) ++from;
    while (to > from && std::isspace(static_cast<unsigned char>(text_[to - 1]))) --to;
    return {text_.substr(from, to - from), from + 1};
  }

  std::string text_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

RationalFunction expression(const Line& line, const std::string& text, std::size_t column,
                            const std::vector<std::string>& names) {
  try {
    return parse_expression(text, names, column - 1);
  } catch (const ParseError& e) {
    throw e.at_line(line.number());
  }
}

MultiPoly polynomial(const Line& line, const std::string& text, std::size_t column,
                     const std::vector<std::string>& names) {
  RationalFunction r = expression(line, text, column, names);
  if (!r.is_polynomial()) line.error_at(column, "expected a polynomial");
  return r.num();
}

struct PendingEntry {
  std::size_t der, gen;
  std::string text;
  std::size_t column;
  std::size_t line;
};

class InputParser {
 public:
  InputModel run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      Line line(raw, ++number);
      if (line.at_end()) continue;
      statement(line);
    }
    close_block();
    if (!field_done_) throw ParseError(number + 1, 1, "missing 'field' block");
    return std::move(model_);
  }

 private:
  enum class Block { None, Field, Point, Variety };

  void statement(Line& line) {
    std::size_t at = (line.skip_ws(), line.column());
    auto word = line.try_ident();
    if (!word) line.error("expected a keyword");
    if (*word == "field") return open_field(line, at);
    if (*word == "point" || *word == "variety" || *word == "base" || *word == "sub") {
      close_block();
      if (!field_done_) line.error_at(at, "'" + *word + "' before the 'field' block");
      if (*word == "point") return open_point(line);
      if (*word == "variety") return open_variety(line);
      if (*word == "base") return base_line(line);
      return sub_line(line);
    }
    switch (block_) {
      case Block::Field:
        if (field_line(line, *word)) return;
        break;
      case Block::Point:
        if (point_line(line, *word, at)) return;
        break;
      case Block::Variety:
        if (variety_line(line, *word, at)) return;
        break;
      case Block::None:
        break;
    }
    line.error_at(at, "unknown keyword '" + *word + "'");
  }

  std::string fresh_name(Line& line, const char* what, const std::vector<std::string>& taken) {
    line.skip_ws();
    std::size_t at = line.column();
    std::string name = line.ident(what);
    if (kKeywords.count(name)) line.error_at(at, "'" + name + "' is a reserved word");
    if (std::find(taken.begin(), taken.end(), name) != taken.end())
      line.error_at(at, std::string("duplicate ") + what + " '" + name + "'");
    return name;
  }

  // field block

  void open_field(Line& line, std::size_t at) {
    if (block_ == Block::Field || field_done_) line.error_at(at, "duplicate 'field' block");
    line.expect_end();
    block_ = Block::Field;
  }

  bool field_line(Line& line, const std::string& word) {
    if (word == "gen") {
      std::vector<std::string> taken = gen_names_;
      taken.insert(taken.end(), der_names_.begin(), der_names_.end());
      std::string name = fresh_name(line, "generator", taken);
      bool constant = false;
      if (!line.at_end()) {
        line.keyword("const");
        constant = true;
      }
      line.expect_end();
      gens_.push_back({name, constant});
      gen_names_.push_back(name);
      return true;
    }
    if (word == "der") {
      std::vector<std::string> taken = der_names_;
      taken.insert(taken.end(), gen_names_.begin(), gen_names_.end());
      der_names_.push_back(fresh_name(line, "derivation", taken));
      line.expect_end();
      return true;
    }
    auto der = std::find(der_names_.begin(), der_names_.end(), word);
    if (der == der_names_.end()) return false;
    line.skip_ws();
    std::size_t at = line.column();
    std::string gen = line.ident("generator name");
    auto g = std::find(gen_names_.begin(), gen_names_.end(), gen);
    if (g == gen_names_.end()) line.error_at(at, "unknown generator '" + gen + "'");
    std::size_t di = der - der_names_.begin(), gi = g - gen_names_.begin();
    for (const auto& e : pending_)
      if (e.der == di && e.gen == gi) line.error_at(at, "duplicate entry " + word + " " + gen);
    line.expect('=');
    auto [text, column] = line.rest();
    if (text.empty()) line.error("expected an expression");
    pending_.push_back({di, gi, text, column, line.number()});
    return true;
  }

  void close_field() {
    RFMatrix table(der_names_.size(), RFVector(gens_.size(), RationalFunction(gens_.size())));
    for (const auto& e : pending_) {
      Line line("", e.line);
      table[e.der][e.gen] = expression(line, e.text, e.column, gen_names_);
    }
    model_.field = DiffField(gens_, der_names_, std::move(table));
    field_done_ = true;
  }

  // point block

  void open_point(Line& line) {
    std::vector<std::string> taken;
    for (const auto& p : model_.points) taken.push_back(p.name);
    PointDecl p;
    p.name = dotted_name(line, "point", taken);
    line.keyword("in");
    line.literal("Gm^");
    p.n = line.integer("dimension");
    line.expect_end();
    model_.points.push_back(std::move(p));
    block_ = Block::Point;
    header_line_ = line.number();
    seen_x_ = seen_y_ = false;
  }

  // Point names may carry a family prefix: "fam.item".
  std::string dotted_name(Line& line, const char* what, const std::vector<std::string>& taken) {
    line.skip_ws();
    std::size_t at = line.column();
    std::string name = line.ident(what);
    while (line.peek('.')) {
      line.expect('.');
      name += "." + line.ident(what);
    }
    if (kKeywords.count(name)) line.error_at(at, "'" + name + "' is a reserved word");
    if (std::find(taken.begin(), taken.end(), name) != taken.end())
      line.error_at(at, std::string("duplicate ") + what + " '" + name + "'");
    return name;
  }

  bool point_line(Line& line, const std::string& word, std::size_t at) {
    if (word != "x" && word != "y") return false;
    PointDecl& p = model_.points.back();
    bool& seen = word == "x" ? seen_x_ : seen_y_;
    if (seen) line.error_at(at, "duplicate '" + word + "' line");
    seen = true;
    line.expect('=');
    line.skip_ws();
    std::size_t open = line.column();
    auto entries = line.tuple();
    line.expect_end();
    if (entries.size() != p.n)
      line.error_at(open, "expected " + std::to_string(p.n) + " entries, got " + std::to_string(entries.size()));
    RFVector values;
    for (const auto& [text, column] : entries) {
      values.push_back(expression(line, text, column, gen_names_));
      if (word == "y" && values.back().is_zero()) line.error_at(column, "torus coordinate is zero");
    }
    if (word == "x")
      p.x = std::move(values);
    else
      p.y = std::move(values);
    return true;
  }

  void close_point() {
    const PointDecl& p = model_.points.back();
    if (!seen_y_) throw ParseError(header_line_, 1, "point '" + p.name + "' has no 'y' line");
  }

  // variety block

  void open_variety(Line& line) {
    std::vector<std::string> taken;
    for (const auto& v : model_.varieties) taken.push_back(v.name);
    VarietyDecl v;
    v.name = fresh_name(line, "variety", taken);
    line.keyword("in");
    line.literal("T(Gm^");
    v.n = line.integer("dimension");
    line.expect(')');
    line.expect_end();
    if (v.n == 0) line.error("dimension must be positive");
    coords_ = coordinate_names(v.n, gen_names_);
    for (std::size_t i = 0; i < 2 * v.n; ++i)
      if (std::find(gen_names_.begin(), gen_names_.end(), coords_[i]) != gen_names_.end())
        line.error("generator '" + coords_[i] + "' shadows a coordinate name");
    model_.varieties.push_back(std::move(v));
    block_ = Block::Variety;
    header_line_ = line.number();
    param_seen_ = false;
    x_parts_.assign(model_.varieties.back().n, std::nullopt);
    y_parts_.assign(model_.varieties.back().n, std::nullopt);
  }

  bool variety_line(Line& line, const std::string& word, std::size_t at) {
    VarietyDecl& v = model_.varieties.back();
    if (word == "eq") {
      auto [text, column] = line.rest();
      if (text.empty()) line.error("expected an equation");
      v.equations.push_back(polynomial(line, text, column, coords_));
      return true;
    }
    if (word == "param") {
      if (param_seen_) line.error_at(at, "duplicate 'param' line");
      param_seen_ = true;
      Parametrization p;
      while (!line.at_end()) {
        std::vector<std::string> taken = gen_names_;
        taken.insert(taken.end(), p.params.begin(), p.params.end());
        p.params.push_back(fresh_name(line, "parameter", taken));
      }
      v.param = std::move(p);
      param_names_ = gen_names_;
      param_names_.insert(param_names_.end(), v.param->params.begin(), v.param->params.end());
      return true;
    }
    if (word.size() < 2 || (word[0] != 'x' && word[0] != 'y') ||
        !std::all_of(word.begin() + 1, word.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return false;
    std::size_t index = word.size() > 4 ? 0 : std::stoul(word.substr(1));
    if (index == 0 || index > v.n) line.error_at(at, "no coordinate '" + word + "' in dimension " + std::to_string(v.n));
    if (!param_seen_) line.error_at(at, "component '" + word + "' before the 'param' line");
    auto& slot = (word[0] == 'x' ? x_parts_ : y_parts_)[index - 1];
    if (slot) line.error_at(at, "duplicate component '" + word + "'");
    line.expect('=');
    auto [text, column] = line.rest();
    if (text.empty()) line.error("expected an expression");
    slot = expression(line, text, column, param_names_);
    if (word[0] == 'y' && slot->is_zero()) line.error_at(column, "torus component is zero");
    return true;
  }

  void close_variety() {
    VarietyDecl& v = model_.varieties.back();
    if (param_seen_) {
      for (std::size_t i = 0; i < v.n; ++i) {
        if (!x_parts_[i] || !y_parts_[i]) {
          std::string which = !x_parts_[i] ? "x" : "y";
          throw ParseError(header_line_, 1,
                           "variety '" + v.name + "' is missing component " + which + std::to_string(i + 1));
        }
        v.param->x.push_back(*x_parts_[i]);
        v.param->y.push_back(*y_parts_[i]);
      }
    } else if (v.equations.empty()) {
      throw ParseError(header_line_, 1, "variety '" + v.name + "' has neither equations nor a parametrization");
    }
  }

  // single-line declarations

  void base_line(Line& line) {
    std::vector<std::string> taken;
    for (const auto& b : model_.bases) taken.push_back(b.name);
    BaseDecl b;
    b.name = fresh_name(line, "base", taken);
    line.expect(':');
    for (const auto& [text, column] : line.comma_list()) {
      if (text.empty()) line.error_at(column, "empty base element");
      b.elements.push_back(polynomial(line, text, column, gen_names_));
    }
    model_.bases.push_back(std::move(b));
  }

  void sub_line(Line& line) {
    std::vector<std::string> taken;
    for (const auto& s : model_.subs) taken.push_back(s.name);
    Substructure s;
    s.name = fresh_name(line, "sub", taken);
    line.expect(':');
    for (const auto& [text, column] : line.comma_list()) {
      if (std::find(gen_names_.begin(), gen_names_.end(), text) == gen_names_.end())
        line.error_at(column, "unknown generator '" + text + "'");
      if (std::find(s.generators.begin(), s.generators.end(), text) != s.generators.end())
        line.error_at(column, "duplicate generator '" + text + "'");
      s.generators.push_back(text);
    }
    model_.subs.push_back(std::move(s));
  }

  void close_block() {
    switch (block_) {
      case Block::Field: close_field(); break;
      case Block::Point: close_point(); break;
      case Block::Variety: close_variety(); break;
      case Block::None: break;
    }
    block_ = Block::None;
  }

  InputModel model_;
  Block block_ = Block::None;
  bool field_done_ = false;
  std::size_t header_line_ = 0;

  std::vector<Generator> gens_;
  std::vector<std::string> gen_names_, der_names_;
  std::vector<PendingEntry> pending_;

  bool seen_x_ = false, seen_y_ = false;

  std::vector<std::string> coords_, param_names_;
  bool param_seen_ = false;
  std::vector<std::optional<RationalFunction>> x_parts_, y_parts_;
};

bool bare_denominator(const MultiPoly& den) {
  if (den.size() != 1) return false;
  const auto& t = den.terms().front();
  if (t.coeff != 1) return false;
  int factors = 0;
  for (int e : t.exponents) factors += e != 0;
  return factors == 1;
}

std::string tuple_text(const RFVector& v, std::span<const std::string> names) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_expression(v[i], names);
  return out + ")";
}

}  // namespace

InputModel parse_input(std::string_view text) { return InputParser().run(text); }

std::string format_expression(const RationalFunction& f, std::span<const std::string> names) {
  if (f.den().is_one()) return f.num().to_string(names);
  std::string num = f.num().to_string(names);
  if (f.num().size() > 1) num = "(" + num + ")";
  std::string den = f.den().to_string(names);
  if (!bare_denominator(f.den())) den = "(" + den + ")";
  return num + "/" + den;
}

std::string format_input(const InputModel& m) {
  std::ostringstream os;
  const DiffField& f = m.field;
  const auto& gn = f.gen_names();
  os << "field\n";
  for (const auto& g : f.generators()) os << "  gen " << g.name << (g.constant ? " const" : "") << "\n";
  for (const auto& d : f.derivation_names()) os << "  der " << d << "\n";
  for (std::size_t j = 0; j < f.nders(); ++j)
    for (std::size_t i = 0; i < f.ngens(); ++i)
      if (!f.derivation_of(j, i).is_zero())
        os << "  " << f.derivation_names()[j] << " " << gn[i] << " = " << format_expression(f.derivation_of(j, i), gn)
           << "\n";
  for (const auto& p : m.points) {
    os << "point " << p.name << " in Gm^" << p.n << "\n";
    if (p.x) os << "  x = " << tuple_text(*p.x, gn) << "\n";
    os << "  y = " << tuple_text(p.y, gn) << "\n";
  }
  for (const auto& v : m.varieties) {
    os << "variety " << v.name << " in T(Gm^" << v.n << ")\n";
    auto coords = coordinate_names(v.n, gn);
    for (const auto& e : v.equations) os << "  eq " << e.to_string(coords) << "\n";
    if (v.param) {
      os << "  param";
      for (const auto& s : v.param->params) os << " " << s;
      os << "\n";
      std::vector<std::string> names = gn;
      names.insert(names.end(), v.param->params.begin(), v.param->params.end());
      for (std::size_t i = 0; i < v.n; ++i) os << "  x" << i + 1 << " = " << format_expression(v.param->x[i], names) << "\n";
      for (std::size_t i = 0; i < v.n; ++i) os << "  y" << i + 1 << " = " << format_expression(v.param->y[i], names) << "\n";
    }
  }
  for (const auto& b : m.bases) {
    os << "base " << b.name << ":";
    for (std::size_t i = 0; i < b.elements.size(); ++i) os << (i ? ", " : " ") << b.elements[i].to_string(gn);
    os << "\n";
  }
  for (const auto& s : m.subs) {
    os << "sub " << s.name << ":";
    for (std::size_t i = 0; i < s.generators.size(); ++i) os << (i ? ", " : " ") << s.generators[i];
    os << "\n";
  }
  return os.str();
}

}  // namespace expdiff

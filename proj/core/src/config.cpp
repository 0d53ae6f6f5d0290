#include "fcat/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fcat {

namespace {

struct Token {
  enum class Kind { ident, integer, rational, string, punct, eof };
  Kind kind = Kind::eof;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::Kind::eof;
      return;
    }
    const char c = s_[pos_];
    if (c == '{' || c == '}' || c == '[' || c == ']' || c == '=' || c == ',') {
      tok_.kind = Token::Kind::punct;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    if (c == '"') {
      bump();
      std::string out;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\n') fail("unterminated string literal");
        out.push_back(s_[pos_]);
        bump();
      }
      if (pos_ >= s_.size()) fail("unterminated string literal");
      bump();
      tok_.kind = Token::Kind::string;
      tok_.text = std::move(out);
      return;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string out;
      out.push_back(c);
      bump();
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        out.push_back(s_[pos_]);
        bump();
      }
      if (pos_ < s_.size() && s_[pos_] == '/') {
        out.push_back('/');
        bump();
        if (pos_ >= s_.size() ||
            !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          fail("malformed rational literal");
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          out.push_back(s_[pos_]);
          bump();
        }
        tok_.kind = Token::Kind::rational;
      } else {
        tok_.kind = Token::Kind::integer;
      }
      tok_.text = std::move(out);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string out;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_' || s_[pos_] == '-')) {
        out.push_back(s_[pos_]);
        bump();
      }
      tok_.kind = Token::Kind::ident;
      tok_.text = std::move(out);
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  std::vector<ConfigEntry> parse_file() {
    std::vector<ConfigEntry> out = parse_entries(false);
    if (lex_.peek().kind != Token::Kind::eof)
      fail(lex_.peek(), "unexpected token '" + lex_.peek().text + "'");
    return out;
  }

 private:
  std::vector<ConfigEntry> parse_entries(bool in_block) {
    std::vector<ConfigEntry> out;
    while (true) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::eof) break;
      if (t.kind == Token::Kind::punct && t.text == "}") {
        if (!in_block) fail(t, "stray '}'");
        break;
      }
      out.push_back(parse_entry());
    }
    return out;
  }

  ConfigEntry parse_entry() {
    Token head = lex_.take();
    if (head.kind != Token::Kind::ident)
      fail(head, "expected a key, got '" + head.text + "'");
    ConfigEntry e;
    e.key = head.text;
    e.line = head.line;
    e.col = head.col;
    // Optional name token.
    const Token& next = lex_.peek();
    if (next.kind == Token::Kind::string ||
        next.kind == Token::Kind::integer ||
        (next.kind == Token::Kind::ident && next.text != "true" &&
         next.text != "false")) {
      // A bare name is only a name if followed by '=' or '{'.
      Token name = lex_.take();
      const Token& after = lex_.peek();
      if (after.kind == Token::Kind::punct &&
          (after.text == "=" || after.text == "{")) {
        e.name = name.text;
      } else {
        fail(name, "expected '=' or '{' after '" + e.key + " " + name.text +
                       "'");
      }
    }
    const Token sep = lex_.take();
    if (sep.kind == Token::Kind::punct && sep.text == "=") {
      e.value = std::make_shared<ConfigValue>(parse_value());
    } else if (sep.kind == Token::Kind::punct && sep.text == "{") {
      ConfigValue v;
      v.kind = ConfigValue::Kind::table;
      v.line = sep.line;
      v.col = sep.col;
      v.entries = parse_entries(true);
      expect_punct("}");
      e.value = std::make_shared<ConfigValue>(std::move(v));
    } else {
      fail(sep, "expected '=' or '{' after key '" + e.key + "'");
    }
    return e;
  }

  ConfigValue parse_value() {
    const Token t = lex_.take();
    ConfigValue v;
    v.line = t.line;
    v.col = t.col;
    if (t.kind == Token::Kind::punct && t.text == "[") {
      v.kind = ConfigValue::Kind::list;
      while (true) {
        const Token& n = lex_.peek();
        if (n.kind == Token::Kind::punct && n.text == "]") {
          lex_.take();
          break;
        }
        if (n.kind == Token::Kind::punct && n.text == ",") {
          lex_.take();
          continue;
        }
        if (n.kind == Token::Kind::eof) fail(n, "unterminated list");
        v.items.push_back(parse_value());
      }
      return v;
    }
    if (t.kind == Token::Kind::punct && t.text == "{") {
      v.kind = ConfigValue::Kind::table;
      v.entries = parse_entries(true);
      expect_punct("}");
      return v;
    }
    if (t.kind == Token::Kind::string || t.kind == Token::Kind::ident ||
        t.kind == Token::Kind::integer || t.kind == Token::Kind::rational) {
      v.kind = ConfigValue::Kind::scalar;
      v.text = t.text;
      v.quoted = t.kind == Token::Kind::string;
      return v;
    }
    fail(t, "expected a value, got '" + t.text + "'");
  }

  void expect_punct(const std::string& p) {
    const Token t = lex_.take();
    if (t.kind != Token::Kind::punct || t.text != p)
      fail(t, "expected '" + p + "'");
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.col);
  }

  Lexer lex_;
};

[[noreturn]] void fail_at(const ConfigValue& v, const std::string& msg) {
  throw ParseError(msg, v.line, v.col);
}

[[noreturn]] void fail_at(const ConfigEntry& e, const std::string& msg) {
  throw ParseError(msg, e.line, e.col);
}

long scalar_int(const ConfigValue& v, const std::string& what) {
  if (v.kind != ConfigValue::Kind::scalar) fail_at(v, what + ": expected an integer");
  try {
    std::size_t used = 0;
    const long out = std::stol(v.text, &used);
    if (used != v.text.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    fail_at(v, what + ": malformed integer '" + v.text + "'");
  }
}

Rat scalar_rat(const ConfigValue& v, const std::string& what) {
  if (v.kind != ConfigValue::Kind::scalar)
    fail_at(v, what + ": expected a rational");
  try {
    return rat_from_string(v.text);
  } catch (const std::invalid_argument& e) {
    fail_at(v, what + ": " + e.what());
  }
}

std::string scalar_text(const ConfigValue& v, const std::string& what) {
  if (v.kind != ConfigValue::Kind::scalar)
    fail_at(v, what + ": expected a name or string");
  return v.text;
}

Mat parse_matrix(const ConfigValue& v, const std::string& what) {
  if (v.kind != ConfigValue::Kind::list)
    fail_at(v, what + ": expected a matrix (list of rows)");
  const int rows = static_cast<int>(v.items.size());
  int cols = -1;
  std::vector<Rat> entries;
  for (const ConfigValue& row : v.items) {
    if (row.kind != ConfigValue::Kind::list)
      fail_at(row, what + ": expected a row (list of rationals)");
    if (cols < 0)
      cols = static_cast<int>(row.items.size());
    else if (cols != static_cast<int>(row.items.size()))
      fail_at(row, what + ": ragged matrix rows");
    for (const ConfigValue& cell : row.items)
      entries.push_back(scalar_rat(cell, what));
  }
  if (rows == 0) cols = 0;
  Mat m(rows, cols);
  m.a = std::move(entries);
  return m;
}

const ConfigValue* find_field(const ConfigValue& table, const std::string& key) {
  for (const ConfigEntry& e : table.entries)
    if (e.key == key && !e.name) return e.value.get();
  return nullptr;
}

}  // namespace

std::vector<ConfigEntry> parse_config_syntax(const std::string& text) {
  return Parser(text).parse_file();
}

const Rep* Config::find_rep(const std::string& n) const {
  for (const auto& [name, rep] : reps)
    if (name == n) return &rep;
  return nullptr;
}

const HeartComplex* Config::find_heart_complex(const std::string& n) const {
  for (const auto& [name, k] : heart_complexes)
    if (name == n) return &k;
  return nullptr;
}

const SubcatPredicate* Config::find_subcat(const std::string& n) const {
  for (const auto& [name, s] : subcats)
    if (name == n) return &s;
  return nullptr;
}

namespace {

Complex probe_complex(const Config& cfg, const ConfigValue& table,
                      const std::string& context) {
  const ConfigValue* repv = find_field(table, "rep");
  if (!repv) fail_at(table, context + ": missing 'rep'");
  const std::string rep_name = scalar_text(*repv, context);
  const Rep* rep = cfg.find_rep(rep_name);
  if (!rep) fail_at(*repv, "unresolved name " + rep_name + " at " + context);
  long shift_by = 0;
  if (const ConfigValue* sv = find_field(table, "shift"))
    shift_by = scalar_int(*sv, context + ".shift");
  return Complex::concentrated(*rep, static_cast<int>(-shift_by));
}

std::string probe_name(const ConfigValue& table) {
  const ConfigValue* repv = find_field(table, "rep");
  std::string out = repv ? repv->text : "?";
  if (const ConfigValue* sv = find_field(table, "shift")) {
    if (sv->text != "0") out += "[" + sv->text + "]";
  }
  return out;
}

}  // namespace

Config parse_config_text(const std::string& text, const std::string& name) {
  const std::vector<ConfigEntry> entries = parse_config_syntax(text);
  Config cfg;
  cfg.name = name;

  // Pass 1: quiver.
  for (const ConfigEntry& e : entries) {
    if (e.key != "quiver") continue;
    const ConfigValue& t = *e.value;
    const ConfigValue* vs = find_field(t, "vertices");
    if (!vs || vs->kind != ConfigValue::Kind::list)
      fail_at(t, "quiver: missing vertex list");
    std::vector<std::string> vertices;
    for (const ConfigValue& v : vs->items)
      vertices.push_back(scalar_text(v, "quiver.vertices"));
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (const ConfigEntry& a : t.entries) {
      if (a.key != "arrow") continue;
      if (!a.name) fail_at(a, "arrow: missing label");
      const ConfigValue* from = find_field(*a.value, "from");
      const ConfigValue* to = find_field(*a.value, "to");
      if (!from || !to) fail_at(a, "arrow " + *a.name + ": needs from/to");
      arrows.push_back({scalar_text(*from, "arrow.from"),
                        scalar_text(*to, "arrow.to"), *a.name});
    }
    try {
      cfg.quiver = make_quiver(vertices, arrows);
    } catch (const ContractError& err) {
      fail_at(e, std::string("quiver: ") + err.what());
    }
  }
  if (!cfg.quiver) throw ParseError("missing quiver block", 1, 1);

  // Pass 2: representations.
  for (const ConfigEntry& e : entries) {
    if (e.key != "rep") continue;
    if (!e.name) fail_at(e, "rep: missing name");
    Rep m = Rep::zero(cfg.quiver);
    for (const ConfigEntry& f : e.value->entries) {
      if (f.key == "dim") {
        if (!f.name) fail_at(f, "rep " + *e.name + ": dim needs a vertex");
        const int v = cfg.quiver->vertex_index(*f.name);
        if (v < 0)
          fail_at(f, "unresolved vertex " + *f.name + " at rep." + *e.name);
        m.dims[v] = static_cast<int>(scalar_int(*f.value, "rep.dim"));
      }
    }
    for (int a = 0; a < cfg.quiver->num_arrows(); ++a)
      m.maps[a] = Mat(m.dims[cfg.quiver->arrows[a].dst],
                      m.dims[cfg.quiver->arrows[a].src]);
    for (const ConfigEntry& f : e.value->entries) {
      if (f.key == "map") {
        if (!f.name) fail_at(f, "rep " + *e.name + ": map needs an arrow");
        const int a = cfg.quiver->arrow_index(*f.name);
        if (a < 0)
          fail_at(f, "unresolved arrow " + *f.name + " at rep." + *e.name);
        Mat mm = parse_matrix(*f.value, "rep." + *e.name + ".map[" + *f.name + "]");
        const auto& ar = cfg.quiver->arrows[a];
        if (mm.rows != m.dims[ar.dst] || mm.cols != m.dims[ar.src])
          fail_at(*f.value, "shape mismatch for arrow " + *f.name + " in rep " +
                                *e.name + ": expected " +
                                std::to_string(m.dims[ar.dst]) + "x" +
                                std::to_string(m.dims[ar.src]));
        m.maps[a] = std::move(mm);
      } else if (f.key != "dim") {
        fail_at(f, "rep " + *e.name + ": unknown field '" + f.key + "'");
      }
    }
    m.check();
    cfg.reps.push_back({*e.name, std::move(m)});
  }

  // Pass 3: torsion pairs.
  for (const ConfigEntry& e : entries) {
    if (e.key != "torsion") continue;
    if (!e.name) fail_at(e, "torsion: missing name");
    const ConfigValue* gens = find_field(*e.value, "generators");
    if (!gens || gens->kind != ConfigValue::Kind::list)
      fail_at(e, "torsion " + *e.name + ": missing generator list");
    TorsionPair tp;
    for (std::size_t i = 0; i < gens->items.size(); ++i) {
      const std::string gname = scalar_text(gens->items[i], "torsion.generators");
      const Rep* rep = cfg.find_rep(gname);
      if (!rep)
        fail_at(gens->items[i], "unresolved name " + gname +
                                    " at torsion.generators[" +
                                    std::to_string(i) + "]");
      tp.generators.push_back(*rep);
      tp.names.push_back(gname);
    }
    cfg.torsion_pairs.push_back({*e.name, std::move(tp)});
  }

  // Pass 4: t-structure.
  cfg.tstructure = TStructureSpec::standard();
  for (const ConfigEntry& e : entries) {
    if (e.key != "tstructure") continue;
    const ConfigValue* kind = find_field(*e.value, "kind");
    if (!kind) fail_at(e, "tstructure: missing kind");
    const std::string k = scalar_text(*kind, "tstructure.kind");
    if (k == "standard") {
      cfg.tstructure = TStructureSpec::standard();
    } else if (k == "tilt") {
      const ConfigValue* tname = find_field(*e.value, "torsion");
      if (!tname) fail_at(e, "tstructure: tilt requires torsion = NAME");
      const std::string tn = scalar_text(*tname, "tstructure.torsion");
      const TorsionPair* tp = nullptr;
      for (const auto& [nm, pair] : cfg.torsion_pairs)
        if (nm == tn) tp = &pair;
      if (!tp)
        fail_at(*tname, "unresolved name " + tn + " at tstructure.torsion");
      cfg.tstructure = TStructureSpec::tilted(*tp);
    } else {
      fail_at(*kind, "tstructure.kind must be standard or tilt");
    }
  }

  // Pass 5: probes, generators.
  for (const ConfigEntry& e : entries) {
    if (e.key == "probes") {
      if (e.value->kind != ConfigValue::Kind::list)
        fail_at(e, "probes: expected a list");
      for (std::size_t i = 0; i < e.value->items.size(); ++i) {
        const ConfigValue& item = e.value->items[i];
        const std::string ctx = "probes[" + std::to_string(i) + "]";
        Complex c;
        std::string pname;
        if (item.kind == ConfigValue::Kind::table) {
          c = probe_complex(cfg, item, ctx);
          pname = probe_name(item);
        } else {
          const std::string rn = scalar_text(item, ctx);
          const Rep* r = cfg.find_rep(rn);
          if (!r) fail_at(item, "unresolved name " + rn + " at " + ctx);
          c = Complex::concentrated(*r, 0);
          pname = rn;
        }
        if (!heart_contains(c, cfg.tstructure))
          fail_at(item, "probe " + pname + " is not a heart object");
        cfg.probes.push_back({pname, HeartObject{c, cfg.tstructure}});
      }
    } else if (e.key == "generators") {
      if (e.value->kind != ConfigValue::Kind::list)
        fail_at(e, "generators: expected a list");
      for (std::size_t i = 0; i < e.value->items.size(); ++i) {
        const ConfigValue& item = e.value->items[i];
        const std::string ctx = "generators[" + std::to_string(i) + "]";
        const std::string rn = scalar_text(item, ctx);
        const Rep* r = cfg.find_rep(rn);
        if (!r) fail_at(item, "unresolved name " + rn + " at " + ctx);
        cfg.generators.push_back({rn, Complex::concentrated(*r, 0)});
      }
    }
  }

  // Pass 6: heart complexes.
  for (const ConfigEntry& e : entries) {
    if (e.key != "heart_complex") continue;
    if (!e.name) fail_at(e, "heart_complex: missing name");
    HeartComplex k;
    k.t = cfg.tstructure;
    if (const ConfigValue* lov = find_field(*e.value, "lo"))
      k.lo = static_cast<int>(scalar_int(*lov, "heart_complex.lo"));
    for (const ConfigEntry& f : e.value->entries) {
      if (f.key != "term") continue;
      const std::string ctx = "heart_complex." + *e.name + ".term";
      Complex c = probe_complex(cfg, *f.value, ctx);
      if (!heart_contains(c, cfg.tstructure))
        fail_at(f, ctx + ": not a heart object");
      k.terms.push_back(HeartObject{c, cfg.tstructure});
    }
    if (k.terms.empty()) fail_at(e, "heart_complex " + *e.name + ": no terms");
    // Differentials: coefficient vectors against the canonical Hom bases.
    std::vector<std::vector<Rat>> coeffs(k.terms.size() - 1);
    for (const ConfigEntry& f : e.value->entries) {
      if (f.key != "diff") continue;
      if (!f.name) fail_at(f, "diff needs a degree");
      const int deg = static_cast<int>(std::stol(*f.name));
      if (deg < k.lo || deg >= k.hi())
        fail_at(f, "diff " + *f.name + ": degree outside the window");
      if (f.value->kind != ConfigValue::Kind::list)
        fail_at(f, "diff: expected a coefficient list");
      for (const ConfigValue& cvl : f.value->items)
        coeffs[deg - k.lo].push_back(scalar_rat(cvl, "diff coefficient"));
    }
    for (std::size_t i = 0; i + 1 < k.terms.size(); ++i) {
      const auto basis =
          derived_hom_basis(k.terms[i].value, k.terms[i + 1].value, 0);
      if (coeffs[i].size() > basis.size())
        fail_at(e, "heart_complex " + *e.name + ": diff " +
                       std::to_string(k.lo + static_cast<int>(i)) + " has " +
                       std::to_string(coeffs[i].size()) +
                       " coefficients but Hom has dimension " +
                       std::to_string(basis.size()));
      DerivedMor d =
          derived_zero(k.terms[i].value, k.terms[i + 1].value, 0);
      for (std::size_t j = 0; j < coeffs[i].size(); ++j)
        d = d + basis[j].scaled(coeffs[i][j]);
      k.diffs.push_back(std::move(d));
    }
    try {
      k.check();
    } catch (const ContractError& err) {
      fail_at(e, std::string("heart_complex ") + *e.name + ": " + err.what());
    }
    cfg.heart_complexes.push_back({*e.name, std::move(k)});
  }

  // Pass 7: subcategories, functoriality probes, realize, axioms.
  for (const ConfigEntry& e : entries) {
    if (e.key == "subcat") {
      if (!e.name) fail_at(e, "subcat: missing name");
      SubcatPredicate d;
      const ConfigValue* kind = find_field(*e.value, "kind");
      if (!kind) fail_at(e, "subcat: missing kind");
      const std::string ks = scalar_text(*kind, "subcat.kind");
      if (ks == "vertex-support") {
        d.kind = SubcatPredicate::Kind::vertex_support;
        const ConfigValue* vsv = find_field(*e.value, "vertices");
        if (!vsv || vsv->kind != ConfigValue::Kind::list)
          fail_at(e, "subcat " + *e.name + ": missing vertices");
        for (const ConfigValue& v : vsv->items) {
          const std::string vn = scalar_text(v, "subcat.vertices");
          const int idx = cfg.quiver->vertex_index(vn);
          if (idx < 0)
            fail_at(v, "unresolved vertex " + vn + " at subcat." + *e.name);
          d.vertices.push_back(idx);
        }
      } else if (ks == "thick-generated") {
        d.kind = SubcatPredicate::Kind::thick_generated;
        const ConfigValue* gv = find_field(*e.value, "generators");
        if (!gv || gv->kind != ConfigValue::Kind::list)
          fail_at(e, "subcat " + *e.name + ": missing generators");
        for (const ConfigValue& g : gv->items) {
          const std::string gn = scalar_text(g, "subcat.generators");
          const Rep* r = cfg.find_rep(gn);
          if (!r)
            fail_at(g, "unresolved name " + gn + " at subcat." + *e.name +
                           ".generators");
          d.generators.push_back(Complex::concentrated(*r, 0));
          d.generator_names.push_back(gn);
        }
        if (const ConfigValue* dv = find_field(*e.value, "depth"))
          d.depth = static_cast<int>(scalar_int(*dv, "subcat.depth"));
      } else {
        fail_at(*kind, "subcat.kind must be vertex-support or thick-generated");
      }
      cfg.subcats.push_back({*e.name, std::move(d)});
    } else if (e.key == "functoriality") {
      const ConfigValue* sv = find_field(*e.value, "subcat");
      const ConfigValue* cv = find_field(*e.value, "complex");
      if (!sv || !cv) fail_at(e, "functoriality: needs subcat and complex");
      cfg.functoriality_probes.push_back(
          {scalar_text(*sv, "functoriality.subcat"),
           scalar_text(*cv, "functoriality.complex")});
    } else if (e.key == "realize") {
      const ConfigValue* cv = find_field(*e.value, "complex");
      if (!cv) fail_at(e, "realize: missing complex");
      cfg.realize_target = scalar_text(*cv, "realize.complex");
    } else if (e.key == "axioms") {
      if (const ConfigValue* s = find_field(*e.value, "seed"))
        cfg.seed = static_cast<std::uint64_t>(scalar_int(*s, "axioms.seed"));
      if (const ConfigValue* s = find_field(*e.value, "samples"))
        cfg.samples = static_cast<int>(scalar_int(*s, "axioms.samples"));
    }
  }

  // Cross-checks of the name references.
  for (const auto& fp : cfg.functoriality_probes) {
    if (!cfg.find_subcat(fp.subcat))
      throw ParseError("unresolved name " + fp.subcat +
                           " at functoriality.subcat",
                       1, 1);
    if (!cfg.find_heart_complex(fp.complex))
      throw ParseError("unresolved name " + fp.complex +
                           " at functoriality.complex",
                       1, 1);
  }
  if (cfg.realize_target && !cfg.find_heart_complex(*cfg.realize_target))
    throw ParseError("unresolved name " + *cfg.realize_target +
                         " at realize.complex",
                     1, 1);
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  const auto slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos) base = base.substr(0, dot);
  return parse_config_text(ss.str(), base);
}

}  // namespace fcat

#include "cdslab/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace cdslab {

namespace {

struct Token {
  enum class Kind { Ident, String, Punct, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct SyntaxFailure {
  Diagnostic diagnostic;
};

bool ident_char(char ch) {
  const auto u = static_cast<unsigned char>(ch);
  return std::isalnum(u) || u >= 0x80 || ch == '_' || ch == '.' || ch == '?' || ch == '\'';
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::String: return "string \"" + t.text + "\"";
    case Token::Kind::Ident: return "'" + t.text + "'";
    case Token::Kind::Punct: return "'" + t.text + "'";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto fail = [&](const std::string& msg) {
    throw SyntaxFailure{{ErrorKind::SyntaxError, msg, line, col}};
  };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, c = col;
    if (ident_char(ch)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Token::Kind::Ident, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (ch == '"') {
      std::string text;
      advance(1);
      while (true) {
        if (i >= src.size() || src[i] == '\n') fail("expected closing '\"'");
        if (src[i] == '"') break;
        if (src[i] == '\\') {
          advance(1);
          if (i >= src.size() || (src[i] != '"' && src[i] != '\\')) fail("expected '\\\"' or '\\\\'");
        }
        text += src[i];
        advance(1);
      }
      advance(1);
      out.push_back({Token::Kind::String, std::move(text), l, c});
      continue;
    }
    const char next = i + 1 < src.size() ? src[i + 1] : '\0';
    std::string punct;
    if (ch == '<' && next == '-') punct = "<-";
    else if (ch == '-' && next == '>') punct = "->";
    else if (ch == '|' && next == '-') punct = "|-";
    else if (ch == '=' && next == '>') punct = "=>";
    else if (std::string_view("{};:,=<>()*").find(ch) != std::string_view::npos) punct = std::string(1, ch);
    else fail(std::string("unexpected character '") + ch + "'");
    out.push_back({Token::Kind::Punct, punct, l, c});
    advance(punct.size());
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

using Pairs = std::vector<std::pair<std::string, std::string>>;

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Workspace& context)
      : toks_(std::move(tokens)), scratch_(context) {}

  ParseResult definitions() {
    ParseResult r;
    try {
      while (!at_end()) {
        const Token& kw = peek();
        if (is_ident("cds")) cds_def(r);
        else if (is_ident("alg")) alg_def(r);
        else if (is_ident("table")) table_def(r);
        else if (is_ident("behaviour")) behaviour_def(r);
        else fail("a definition (cds, alg, table or behaviour)", kw);
      }
    } catch (const SyntaxFailure& f) {
      r.errors.push_back(f.diagnostic);
    }
    if (!r.errors.empty()) r.delta = Workspace();
    return r;
  }

  TypeExpr type_only() {
    TypeExpr t = type();
    if (!at_end()) fail("end of type", peek());
    return t;
  }

  Pairs state_only() {
    Pairs p = state_lit();
    if (!at_end()) fail("end of state", peek());
    return p;
  }

  CdsPtr resolve(const TypeExpr& t) {
    switch (t.kind) {
      case TypeExpr::Kind::Name: return scratch_.get_cds(t.name);
      case TypeExpr::Kind::Product: {
        std::vector<Cds> factors;
        for (const auto& p : t.parts) factors.push_back(*resolve(p));
        return scratch_.intern_type(to_string(t), [&] {
          return std::make_shared<const Cds>(product(factors));
        });
      }
      case TypeExpr::Kind::Arrow: {
        CdsPtr from = resolve(t.parts[0]);
        CdsPtr to = resolve(t.parts[1]);
        return scratch_.intern_type(to_string(t), [&] { return exponential(from, to); });
      }
    }
    return nullptr;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_ident(const char* word) const {
    return peek().kind == Token::Kind::Ident && peek().text == word;
  }
  bool is_punct(const char* p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }

  [[noreturn]] static void fail(const std::string& expected, const Token& t) {
    throw SyntaxFailure{
        {ErrorKind::SyntaxError, "expected " + expected + ", found " + describe(t), t.line, t.column}};
  }

  const Token& take() { return toks_[pos_++]; }

  void expect(const char* p) {
    if (!is_punct(p)) fail(std::string("'") + p + "'", peek());
    ++pos_;
  }

  void expect_word(const char* w) {
    if (!is_ident(w)) fail(std::string("'") + w + "'", peek());
    ++pos_;
  }

  const Token& name(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(what, peek());
    return take();
  }

  TypeExpr type() {
    TypeExpr left = prod();
    if (!is_punct("->")) return left;
    ++pos_;
    TypeExpr t;
    t.kind = TypeExpr::Kind::Arrow;
    t.parts.push_back(std::move(left));
    t.parts.push_back(type());
    return t;
  }

  TypeExpr prod() {
    TypeExpr first = atom();
    if (!is_punct("*")) return first;
    TypeExpr t;
    t.kind = TypeExpr::Kind::Product;
    t.parts.push_back(std::move(first));
    while (is_punct("*")) {
      ++pos_;
      t.parts.push_back(atom());
    }
    return t;
  }

  TypeExpr atom() {
    if (is_punct("(")) {
      ++pos_;
      TypeExpr t = type();
      expect(")");
      return t;
    }
    TypeExpr t;
    t.name = name("a type name or '('").text;
    return t;
  }

  std::string cell_ref() {
    if (is_punct("<")) {
      const Token& open = take();
      Pairs input = state_lit();
      expect("|-");
      std::string out = cell_ref();
      expect(">");
      State x;
      for (const auto& [c, v] : input)
        if (!x.insert({CellId{c}, ValueId{v}}))
          throw SyntaxFailure{{ErrorKind::NotFunctional, "cell " + c + " filled twice in a function cell",
                               open.line, open.column}};
      return to_string(FunCell{x, CellId{out}});
    }
    return name("a cell").text;
  }

  std::string value_ref() {
    if (is_ident("valof")) {
      ++pos_;
      return "valof " + cell_ref();
    }
    if (is_ident("output")) {
      ++pos_;
      return "output " + value_ref();
    }
    return name("a value").text;
  }

  Pairs state_lit() {
    expect("{");
    Pairs out;
    while (!is_punct("}")) {
      std::string c = cell_ref();
      expect("=");
      out.emplace_back(std::move(c), value_ref());
      if (is_punct(",")) ++pos_;
      else if (!is_punct("}")) fail("',' or '}'", peek());
    }
    ++pos_;
    return out;
  }

  std::vector<Token> names_until_semicolon(const char* what) {
    std::vector<Token> out;
    while (!is_punct(";")) out.push_back(name(what));
    ++pos_;
    return out;
  }

  // Runs a validation step; errors are recorded at the definition's name.
  template <class F>
  bool validate(ParseResult& r, const Token& at, F&& step) {
    try {
      step();
      return true;
    } catch (const Error& e) {
      for (auto d : e.diagnostics()) {
        if (d.line == 0) {
          d.line = at.line;
          d.column = at.column;
        }
        r.errors.push_back(std::move(d));
      }
      return false;
    }
  }

  static std::vector<Diagnostic> located(std::vector<Diagnostic> ds, const Token& at) {
    for (auto& d : ds)
      if (d.line == 0) {
        d.line = at.line;
        d.column = at.column;
      }
    return ds;
  }

  void cds_def(ParseResult& r) {
    ++pos_;
    const Token n = name("a Cds name");
    expect("{");
    std::vector<CellId> cells;
    std::vector<ValueId> values;
    std::vector<Event> events;
    std::map<CellId, std::vector<Precondition>> enabling;
    while (!is_punct("}")) {
      if (is_ident("cells")) {
        ++pos_;
        for (const auto& t : names_until_semicolon("a cell name")) cells.emplace_back(t.text);
      } else if (is_ident("values")) {
        ++pos_;
        for (const auto& t : names_until_semicolon("a value name")) values.emplace_back(t.text);
      } else if (is_ident("events")) {
        ++pos_;
        while (!is_punct(";")) {
          std::string c = name("a cell name").text;
          expect(":");
          events.push_back(event(c, name("a value name").text));
        }
        ++pos_;
      } else if (is_ident("enable")) {
        ++pos_;
        CellId c{name("a cell name").text};
        expect("<-");
        std::string pc = name("a cell name").text;
        expect(":");
        enabling[c].push_back(event(pc, name("a value name").text));
        expect(";");
      } else {
        fail("'cells', 'values', 'events', 'enable' or '}'", peek());
      }
    }
    ++pos_;
    for (const auto& c : cells)
      if (!enabling.count(c)) enabling[c] = {std::nullopt};
    auto d = make_cds(n.text, std::move(cells), std::move(values), std::move(events), std::move(enabling));
    if (!d.ok()) {
      auto ds = located(d.errors(), n);
      r.errors.insert(r.errors.end(), ds.begin(), ds.end());
      return;
    }
    auto ptr = std::make_shared<const Cds>(std::move(d).value());
    validate(r, n, [&] {
      scratch_.add_cds(n.text, ptr);
      r.delta.add_cds(n.text, ptr);
    });
  }

  // Resolves a type, reporting failures at `at`.
  std::optional<CdsPtr> resolved(ParseResult& r, const Token& at, const TypeExpr& t) {
    std::optional<CdsPtr> out;
    validate(r, at, [&] { out = resolve(t); });
    return out;
  }

  std::optional<State> to_state(ParseResult& r, const Token& at, const Pairs& p) {
    State x;
    for (const auto& [c, v] : p)
      if (!x.insert({CellId{c}, ValueId{v}})) {
        r.errors.push_back({ErrorKind::NotFunctional, "cell " + c + " filled twice", at.line, at.column});
        return std::nullopt;
      }
    return x;
  }

  void alg_def(ParseResult& r) {
    ++pos_;
    const Token n = name("an algorithm name");
    expect(":");
    const Token type_at = peek();
    TypeExpr t = type();
    expect("{");
    struct Raw {
      Token at;
      Pairs input;
      std::string out;
      bool ask;
      std::string target;
    };
    std::vector<Raw> raws;
    while (!is_punct("}")) {
      const Token at = peek();
      expect_word("at");
      Raw raw{at, state_lit(), cell_ref(), false, ""};
      if (is_ident("ask")) {
        ++pos_;
        raw.ask = true;
        raw.target = cell_ref();
      } else if (is_ident("put")) {
        ++pos_;
        raw.target = value_ref();
      } else {
        fail("'ask' or 'put'", peek());
      }
      expect(";");
      raws.push_back(std::move(raw));
    }
    ++pos_;

    if (t.kind != TypeExpr::Kind::Arrow) {
      r.errors.push_back({ErrorKind::TypeMismatch, "an algorithm needs a type M -> N, not " + to_string(t),
                          type_at.line, type_at.column});
      return;
    }
    auto space = resolved(r, type_at, t);
    if (!space) return;
    std::vector<FunEvent> moves;
    bool ok = true;
    for (const auto& raw : raws) {
      auto x = to_state(r, raw.at, raw.input);
      if (!x) {
        ok = false;
        continue;
      }
      FunCell fc{*x, CellId{raw.out}};
      moves.emplace_back(fc, raw.ask ? FunValue::valof(CellId{raw.target})
                                     : FunValue::output(ValueId{raw.target}));
    }
    if (!ok) return;
    auto f = validate_algorithm(*space, moves);
    if (!f.ok()) {
      auto ds = located(f.errors(), n);
      r.errors.insert(r.errors.end(), ds.begin(), ds.end());
      return;
    }
    validate(r, n, [&] {
      scratch_.add_alg(n.text, f.value());
      r.delta.add_alg(n.text, f.value());
    });
  }

  void table_def(ParseResult& r) {
    ++pos_;
    const Token n = name("a table name");
    expect(":");
    const Token type_at = peek();
    TypeExpr t = type();
    expect("{");
    std::vector<std::pair<Token, std::pair<Pairs, Pairs>>> rows;
    bool default_empty = false;
    std::string note;
    while (!is_punct("}")) {
      if (is_ident("default")) {
        ++pos_;
        expect_word("empty");
        expect(";");
        default_empty = true;
      } else if (is_ident("note")) {
        ++pos_;
        if (peek().kind != Token::Kind::String) fail("a string", peek());
        note = take().text;
        expect(";");
      } else {
        const Token at = peek();
        if (!is_punct("{")) fail("a row, 'default', 'note' or '}'", at);
        Pairs x = state_lit();
        expect("=>");
        Pairs y = state_lit();
        expect(";");
        rows.push_back({at, {std::move(x), std::move(y)}});
      }
    }
    ++pos_;

    if (t.kind != TypeExpr::Kind::Arrow) {
      r.errors.push_back({ErrorKind::TypeMismatch, "a table needs a type M -> N, not " + to_string(t),
                          type_at.line, type_at.column});
      return;
    }
    auto from = resolved(r, type_at, t.parts[0]);
    auto to = resolved(r, type_at, t.parts[1]);
    if (!from || !to) return;

    const std::size_t before = r.errors.size();
    FunTable table{*from, *to, {}};
    std::map<State, State> given;
    for (const auto& [at, row] : rows) {
      auto x = to_state(r, at, row.first);
      auto y = to_state(r, at, row.second);
      if (!x || !y) continue;
      for (const auto& [state, d] : {std::pair{&*x, *from}, std::pair{&*y, *to}}) {
        auto v = check_state(*d, *state);
        if (!v.ok()) {
          auto ds = located(v.errors(), at);
          r.errors.insert(r.errors.end(), ds.begin(), ds.end());
        }
      }
      auto [it, fresh] = given.emplace(*x, *y);
      if (!fresh && it->second != *y)
        r.errors.push_back({ErrorKind::InvalidTable, "row " + to_string(*x) + " given twice", at.line,
                            at.column});
    }
    if (r.errors.size() != before) return;
    bool ok = validate(r, n, [&] {
      for (const auto& x : enumerate_states(**from)) {
        auto it = given.find(x);
        if (it != given.end()) {
          table.rows.emplace(x, it->second);
          given.erase(it);
        } else if (default_empty) {
          table.rows.emplace(x, State{});
        } else {
          throw Error(ErrorKind::InvalidTable,
                      "no row for " + to_string(x) + "; add it or declare 'default empty;'");
        }
      }
    });
    if (!ok) return;
    validate(r, n, [&] {
      scratch_.add_table(n.text, {table, note});
      r.delta.add_table(n.text, {table, note});
    });
  }

  void behaviour_def(ParseResult& r) {
    ++pos_;
    const Token n = name("a behaviour name");
    expect(":");
    const Token type_at = peek();
    TypeExpr t = type();
    expect("{");
    std::vector<Token> tests;
    while (!is_punct("}")) {
      expect_word("tests");
      for (auto& tok : names_until_semicolon("a taster name")) tests.push_back(std::move(tok));
    }
    ++pos_;
    auto type = resolved(r, type_at, t);
    if (!type) return;
    BehaviourEntry entry{Behaviour(*type), {}};
    bool ok = true;
    for (const auto& tok : tests) {
      ok = validate(r, tok, [&] {
        entry.behaviour.add(Taster(scratch_.get_alg(tok.text)));
        if (std::find(entry.tests.begin(), entry.tests.end(), tok.text) == entry.tests.end())
          entry.tests.push_back(tok.text);
      }) && ok;
    }
    if (!ok) return;
    validate(r, n, [&] {
      scratch_.add_behaviour(n.text, entry);
      r.delta.add_behaviour(n.text, entry);
    });
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Workspace scratch_;
};

}  // namespace

std::string to_string(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Name: return t.name;
    case TypeExpr::Kind::Product: {
      std::string out = "(";
      for (std::size_t i = 0; i < t.parts.size(); ++i) {
        if (i) out += " * ";
        out += to_string(t.parts[i]);
      }
      return out + ")";
    }
    case TypeExpr::Kind::Arrow:
      return "(" + to_string(t.parts[0]) + " -> " + to_string(t.parts[1]) + ")";
  }
  return "";
}

ParseResult parse_definitions(std::string_view text, const Workspace& context) {
  try {
    Parser p(lex(text), context);
    return p.definitions();
  } catch (const SyntaxFailure& f) {
    ParseResult r;
    r.errors.push_back(f.diagnostic);
    return r;
  }
}

ParseResult parse_file(const std::string& path, const Workspace& context) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult r;
    r.errors.push_back({ErrorKind::UnknownName, "cannot read " + path});
    return r;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_definitions(text.str(), context);
}

Validated<CdsPtr> parse_type(std::string_view text, const Workspace& context) {
  try {
    Parser p(lex(text), context);
    TypeExpr t = p.type_only();
    return p.resolve(t);
  } catch (const SyntaxFailure& f) {
    return std::vector<Diagnostic>{f.diagnostic};
  } catch (const Error& e) {
    return e.diagnostics();
  }
}

Validated<State> parse_state(std::string_view text, const Cds& d) {
  try {
    Parser p(lex(text), Workspace());
    std::vector<Event> events;
    for (const auto& [c, v] : p.state_only()) events.push_back(event(c, v));
    return check_state(d, events);
  } catch (const SyntaxFailure& f) {
    return std::vector<Diagnostic>{f.diagnostic};
  }
}

std::string type_text(const Cds& d) {
  const std::string& n = d.name();
  if (n.size() < 2 || n.front() != '(' || n.back() != ')') return n;
  int depth = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == '(') ++depth;
    if (n[i] == ')' && --depth == 0 && i + 1 != n.size()) return n;
  }
  return n.substr(1, n.size() - 2);
}

std::string arrow_text(const Cds& from, const Cds& to) { return from.name() + " -> " + to.name(); }

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string print_definitions(const Workspace& ws) {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << '\n';
    first = false;
  };
  for (const auto& [name, d] : ws.cds()) {
    if (ws.is_builtin(name)) continue;
    sep();
    out << "cds " << name << " {\n  cells";
    for (const auto& c : d->cells()) out << ' ' << c.name;
    out << ";\n  values";
    for (const auto& v : d->values()) out << ' ' << v.name;
    out << ";\n  events";
    for (const auto& e : d->events()) out << ' ' << e.cell.name << ':' << e.value.name;
    out << ";\n";
    for (const auto& c : d->cells())
      for (const auto& p : d->enabling(c))
        if (p) out << "  enable " << c.name << " <- " << p->cell.name << ':' << p->value.name << ";\n";
    out << "}\n";
  }
  for (const auto& [name, f] : ws.algs()) {
    sep();
    out << "alg " << name << " : " << type_text(*f.space()) << " {\n";
    for (const auto& [fc, fv] : f.moves()) {
      out << "  at " << to_string(fc.input) << ' ' << fc.output.name;
      if (fv.is_valof()) out << " ask " << fv.cell().name;
      else out << " put " << fv.value().name;
      out << ";\n";
    }
    out << "}\n";
  }
  for (const auto& [name, entry] : ws.tables()) {
    sep();
    const FunTable& t = entry.table;
    out << "table " << name << " : " << arrow_text(*t.from, *t.to) << " {\n";
    bool has_empty = false;
    for (const auto& [x, y] : t.rows) {
      if (y.empty()) {
        has_empty = true;
        continue;
      }
      out << "  " << to_string(x) << " => " << to_string(y) << ";\n";
    }
    if (has_empty) out << "  default empty;\n";
    if (!entry.note.empty()) out << "  note " << quoted(entry.note) << ";\n";
    out << "}\n";
  }
  for (const auto& [name, entry] : ws.behaviours()) {
    sep();
    out << "behaviour " << name << " : " << type_text(*entry.behaviour.candidate_type()) << " {\n  tests";
    for (const auto& t : entry.tests) out << ' ' << t;
    out << ";\n}\n";
  }
  return out.str();
}

}  // namespace cdslab

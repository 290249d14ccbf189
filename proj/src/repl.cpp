#include "cdslab/repl.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace cdslab {

namespace {

const char* const kHelp =
    "load FILE...            read definition files\n"
    "alg NAME arg ARG        apply NAME to ARG: {c=v,...}, manual, or an algorithm\n"
    "request CELL            ask the output cell CELL\n"
    "answer VALUE            answer the pending query (manual argument)\n"
    "trace                   show the last dialogue with its tables\n"
    "reset                   clear the internal table\n"
    "classify TABLE          monotone / stable / sequential verdicts\n"
    "enum M N                list the algorithms of M -> N\n"
    "ortho TASTER ALG        run a taster against a candidate\n"
    "member BEHAVIOUR ALG    test a candidate against a behaviour\n"
    "subtype B1 B2           is B1 a subtype of B2\n"
    "list                    show loaded names\n"
    "quit\n";

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string pair_text(const std::pair<State, State>& p) {
  return to_string(p.first) + " " + to_string(p.second);
}

void need_args(const std::vector<std::string>& words, std::size_t n, const char* usage) {
  if (words.size() != n) throw Error(ErrorKind::SyntaxError, std::string("usage: ") + usage);
}

}  // namespace

std::shared_ptr<ArgumentProcess> make_argument(const Workspace& ws, const SeqAlg& f,
                                               const std::string& text) {
  const std::string s = trim(text);
  if (s == "manual") return std::make_shared<InteractiveOracle>();
  if (!s.empty() && s.front() == '{') {
    return std::make_shared<StaticState>(parse_state(s, lift_err(f.from())).value());
  }
  const SeqAlg& g = ws.get_alg(s);
  if (!g.space()->same_structure(f.from()))
    throw Error(ErrorKind::TypeMismatch, s + " has type " + type_text(*g.space()) + ", but " +
                                             type_text(*f.space()) + " reads " + type_text(f.from()));
  return std::make_shared<AlgorithmArg>(g);
}

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : line) {
    if (ch == '(' || ch == '{' || ch == '<') ++depth;
    if ((ch == ')' || ch == '}' || ch == '>') && depth > 0) --depth;
    if (depth == 0 && (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n')) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string classify_report(const Workspace& ws, const std::string& name) {
  const TableEntry& entry = ws.get_table(name);
  const Classification c = classify(entry.table);
  std::ostringstream out;
  out << "table " << name << " : " << arrow_text(*entry.table.from, *entry.table.to) << "\n";
  out << "monotone: " << yes_no(c.monotone);
  if (c.monotone_verdict.counterexample) out << " (" << pair_text(*c.monotone_verdict.counterexample) << ")";
  out << "\nstable: ";
  if (!c.stable_verdict) {
    out << "no (not monotone)";
  } else {
    out << yes_no(c.stable);
    if (c.stable_verdict->counterexample) out << " (" << pair_text(*c.stable_verdict->counterexample) << ")";
    if (!c.stable_verdict->skipped.empty())
      out << "\nskipped pairs: " << c.stable_verdict->skipped.size();
  }
  out << "\nsequential: ";
  if (c.realizers.empty()) {
    out << "no (search exhausted)\n";
  } else {
    out << "yes (" << c.realizers.size() << " realizer" << (c.realizers.size() == 1 ? "" : "s") << ")\n";
    for (const auto& f : c.realizers) out << "  " << to_string(f.state()) << "\n";
  }
  if (!entry.note.empty()) out << "note: " << entry.note << "\n";
  return out.str();
}

std::string enum_report(const Workspace& ws, const std::string& from, const std::string& to) {
  CdsPtr m = parse_type(from, ws).value();
  CdsPtr n = parse_type(to, ws).value();
  const auto algs = enumerate_algorithms(exponential(m, n));
  std::ostringstream out;
  out << algs.size() << " algorithm" << (algs.size() == 1 ? "" : "s") << " of " << arrow_text(*m, *n)
      << "\n";
  for (const auto& f : algs) out << "  " << to_string(f.state()) << "\n";
  return out.str();
}

std::string ortho_report(const Workspace& ws, const std::string& taster, const std::string& candidate) {
  OrthoResult r = orthogonal(Taster(ws.get_alg(taster)), ws.get_alg(candidate));
  return to_text(r.trace) + (r.orthogonal ? "orthogonal\n" : "not orthogonal\n");
}

std::string member_report(const Workspace& ws, const std::string& behaviour,
                          const std::string& candidate) {
  const BehaviourEntry& b = ws.get_behaviour(behaviour);
  const SeqAlg& s = ws.get_alg(candidate);
  std::ostringstream out;
  for (std::size_t i = 0; i < b.tests.size(); ++i)
    out << "  " << b.tests[i] << ": "
        << (orthogonal(b.behaviour.tests()[i], s).orthogonal ? "orthogonal" : "not orthogonal") << "\n";
  out << (member(b.behaviour, s) ? "member\n" : "not member\n");
  return out.str();
}

std::string subtype_report(const Workspace& ws, const std::string& sub, const std::string& super,
                           bool semantic) {
  SubtypeVerdict v = subtype(ws.get_behaviour(sub).behaviour, ws.get_behaviour(super).behaviour, semantic);
  std::string out = "syntactic: " + yes_no(v.syntactic) + "\n";
  if (v.semantic) out += "semantic: " + yes_no(*v.semantic) + "\n";
  return out;
}

std::string list_report(const Workspace& ws) {
  std::ostringstream out;
  auto line = [&](const char* kind, const auto& m) {
    out << kind << ":";
    for (const auto& [name, _] : m) out << " " << name;
    out << "\n";
  };
  line("cds", ws.cds());
  line("algs", ws.algs());
  line("tables", ws.tables());
  line("behaviours", ws.behaviours());
  return out.str();
}

Session& Repl::active() {
  if (!session_) throw Error(ErrorKind::WrongPhase, "no algorithm applied; use: alg NAME arg ARG");
  return *session_;
}

void Repl::print_new_lines(std::ostream& out) {
  const auto lines = trace_lines(session_->trace());
  for (std::size_t i = printed_; i < lines.size(); ++i) out << lines[i] << "\n";
  printed_ = lines.size();
}

bool Repl::execute(const std::string& raw, std::ostream& out) {
  const std::string line = trim(raw);
  if (line.empty() || line.front() == '#') return true;
  const auto space = line.find_first_of(" \t");
  const std::string cmd = line.substr(0, space);
  const std::string rest = space == std::string::npos ? "" : trim(line.substr(space));
  if (cmd == "quit" || cmd == "exit") return false;
  try {
    dispatch(cmd, rest, out);
  } catch (const Error& e) {
    for (const auto& d : e.diagnostics()) out << "error: " << format(d) << "\n";
  }
  return true;
}

void Repl::dispatch(const std::string& cmd, const std::string& rest, std::ostream& out) {
  const auto words = split_words(rest);
  if (cmd == "help") {
    out << kHelp;
  } else if (cmd == "load") {
    if (words.empty()) throw Error(ErrorKind::SyntaxError, "usage: load FILE...");
    Workspace next = ws_;
    std::vector<std::string> added;
    for (const auto& file : words) {
      ParseResult r = parse_file(file, next);
      if (!r.ok()) {
        for (const auto& d : r.errors) out << "error: " << file << ":" << format(d) << "\n";
        return;
      }
      next.merge(r.delta);
      for (auto& n : r.delta.names()) added.push_back(std::move(n));
    }
    ws_ = std::move(next);
    out << "loaded";
    for (const auto& n : added) out << " " << n;
    out << "\n";
  } else if (cmd == "alg") {
    if (words.size() != 3 || words[1] != "arg")
      throw Error(ErrorKind::SyntaxError, "usage: alg NAME arg ARG");
    const SeqAlg& f = ws_.get_alg(words[0]);
    const std::string& given = words[2];
    auto arg = make_argument(ws_, f, given);
    session_.emplace(f, std::move(arg));
    printed_ = 0;
    out << words[0] << " applied to " << given << "\n";
  } else if (cmd == "request") {
    need_args(words, 1, "request CELL");
    Session& s = active();
    s.request(CellId{words[0]});
    printed_ = 0;
    print_new_lines(out);
  } else if (cmd == "answer") {
    need_args(words, 1, "answer VALUE");
    Session& s = active();
    s.answer(words[0] == "err" ? Answer::err() : Answer::of(ValueId{words[0]}));
    print_new_lines(out);
  } else if (cmd == "trace") {
    out << to_text(active().trace(), true);
  } else if (cmd == "reset") {
    active().reset();
    printed_ = 0;
    out << "table cleared\n";
  } else if (cmd == "classify") {
    need_args(words, 1, "classify TABLE");
    out << classify_report(ws_, words[0]);
  } else if (cmd == "enum") {
    need_args(words, 2, "enum M N");
    out << enum_report(ws_, words[0], words[1]);
  } else if (cmd == "ortho") {
    need_args(words, 2, "ortho TASTER ALG");
    out << ortho_report(ws_, words[0], words[1]);
  } else if (cmd == "member") {
    need_args(words, 2, "member BEHAVIOUR ALG");
    out << member_report(ws_, words[0], words[1]);
  } else if (cmd == "subtype") {
    if (words.size() == 3 && words[2] == "semantic") {
      out << subtype_report(ws_, words[0], words[1], true);
      return;
    }
    need_args(words, 2, "subtype B1 B2 [semantic]");
    out << subtype_report(ws_, words[0], words[1], false);
  } else if (cmd == "list") {
    out << list_report(ws_);
  } else {
    throw Error(ErrorKind::SyntaxError, "unknown command " + cmd + "; try help");
  }
}

void Repl::run(std::istream& in, std::ostream& out, bool prompt) {
  std::string line;
  while (true) {
    if (prompt) out << "cds> " << std::flush;
    if (!std::getline(in, line)) break;
    if (!execute(line, out)) break;
  }
}

}  // namespace cdslab

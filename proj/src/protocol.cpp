#include "cdslab/protocol.hpp"

namespace cdslab {

using nlohmann::json;

namespace {

struct BadRequest {
  std::string detail;
};

const std::string& str(const json& req, const char* field) {
  auto it = req.find(field);
  if (it == req.end() || !it->is_string())
    throw BadRequest{std::string("field '") + field + "' must be a string"};
  return it->get_ref<const std::string&>();
}

json table_json(const State& x) {
  json out = json::object();
  for (const auto& [c, v] : x.map()) out[c.name] = v.name;
  return out;
}

json pair_json(const std::optional<std::pair<State, State>>& p) {
  if (!p) return nullptr;
  return json::array({to_string(p->first), to_string(p->second)});
}

json error_reply(const Error& e) {
  json diags = json::array();
  for (const auto& d : e.diagnostics())
    diags.push_back({{"kind", std::string(to_string(d.kind))},
                     {"message", d.message},
                     {"line", d.line},
                     {"column", d.column}});
  return {{"ok", false},
          {"error", std::string(to_string(e.kind()))},
          {"detail", e.diagnostics().front().message},
          {"diagnostics", std::move(diags)}};
}

}  // namespace

std::string ProtocolHandler::handle_line(const std::string& line) {
  json req;
  try {
    req = json::parse(line);
  } catch (const json::parse_error& e) {
    return json{{"ok", false}, {"error", "parse"}, {"detail", e.what()}}.dump();
  }
  return handle(req).dump();
}

json ProtocolHandler::handle(const json& req) {
  json reply;
  try {
    if (!req.is_object()) throw BadRequest{"a request must be a JSON object"};
    reply = dispatch(str(req, "op"), req);
  } catch (const BadRequest& e) {
    reply = {{"ok", false}, {"error", "request"}, {"detail", e.detail}};
  } catch (const Error& e) {
    reply = error_reply(e);
  } catch (const json::exception& e) {
    reply = {{"ok", false}, {"error", "request"}, {"detail", e.what()}};
  }
  if (req.is_object() && req.contains("id")) reply["id"] = req["id"];
  return reply;
}

Session& ProtocolHandler::session(const json& req) {
  auto it = req.find("session");
  if (it == req.end() || !it->is_number_integer()) throw BadRequest{"field 'session' must be an integer"};
  auto s = sessions_.find(it->get<int>());
  if (s == sessions_.end())
    throw Error(ErrorKind::UnknownName, "no session " + std::to_string(it->get<int>()));
  return s->second;
}

json ProtocolHandler::dialogue_reply(int id, const Session& s) const {
  const Trace& t = s.trace();
  json reply = {{"ok", true}, {"session", id}, {"trace", trace_lines(t)}, {"table", table_json(s.table())}};
  if (s.awaiting()) {
    reply["outcome"] = "awaiting";
  } else {
    switch (t.outcome.kind) {
      case Outcome::Kind::Value:
        reply["outcome"] = "value";
        reply["value"] = t.outcome.value.name;
        break;
      case Outcome::Kind::Err: reply["outcome"] = "err"; break;
      case Outcome::Kind::Stuck: reply["outcome"] = "stuck"; break;
    }
  }
  if (!t.moves.empty() && t.moves.back().kind == Move::Kind::Valof)
    reply["pending"] = {{"valof", t.moves.back().name}};
  return reply;
}

json ProtocolHandler::dispatch(const std::string& op, const json& req) {
  if (op == "load") {
    ParseResult r = parse_definitions(str(req, "text"), ws_);
    if (!r.ok()) throw Error(r.errors);
    ws_.merge(r.delta);
    return {{"ok", true}, {"names", r.delta.names()}};
  }
  if (op == "list") {
    auto keys = [](const auto& m) {
      json out = json::array();
      for (const auto& [name, _] : m) out.push_back(name);
      return out;
    };
    return {{"ok", true},
            {"cds", keys(ws_.cds())},
            {"algs", keys(ws_.algs())},
            {"tables", keys(ws_.tables())},
            {"behaviours", keys(ws_.behaviours())}};
  }
  if (op == "print") return {{"ok", true}, {"text", print_definitions(ws_)}};
  if (op == "open") {
    const SeqAlg& f = ws_.get_alg(str(req, "alg"));
    auto arg = make_argument(ws_, f, str(req, "arg"));
    const int id = next_session_++;
    sessions_.emplace(id, Session(f, std::move(arg)));
    json outputs = json::array(), inputs = json::array();
    for (const auto& c : f.to().cells()) outputs.push_back(c.name);
    for (const auto& c : f.from().cells()) inputs.push_back(c.name);
    return {{"ok", true},
            {"session", id},
            {"type", type_text(*f.space())},
            {"outputs", std::move(outputs)},
            {"inputs", std::move(inputs)}};
  }
  if (op == "request") {
    Session& s = session(req);
    s.request(CellId{str(req, "cell")});
    return dialogue_reply(req["session"].get<int>(), s);
  }
  if (op == "answer") {
    Session& s = session(req);
    const std::string& v = str(req, "value");
    s.answer(v == "err" ? Answer::err() : Answer::of(ValueId{v}));
    return dialogue_reply(req["session"].get<int>(), s);
  }
  if (op == "reset") {
    Session& s = session(req);
    s.reset();
    return {{"ok", true}, {"session", req["session"]}, {"table", table_json(s.table())}};
  }
  if (op == "trace") {
    Session& s = session(req);
    const bool verbose = req.value("verbose", false);
    return {{"ok", true}, {"session", req["session"]}, {"trace", trace_lines(s.trace(), verbose)}};
  }
  if (op == "close") {
    session(req);
    sessions_.erase(req["session"].get<int>());
    return {{"ok", true}};
  }
  if (op == "classify") {
    const TableEntry& entry = ws_.get_table(str(req, "table"));
    const Classification c = classify(entry.table);
    json realizers = json::array();
    for (const auto& f : c.realizers) realizers.push_back(to_string(f.state()));
    json reply = {{"ok", true},
                  {"monotone", c.monotone},
                  {"stable", c.stable},
                  {"sequential", c.sequential()},
                  {"realizers", std::move(realizers)},
                  {"monotone_counterexample", pair_json(c.monotone_verdict.counterexample)},
                  {"note", entry.note}};
    if (c.stable_verdict) {
      reply["stable_counterexample"] = pair_json(c.stable_verdict->counterexample);
      reply["skipped"] = c.stable_verdict->skipped.size();
    }
    return reply;
  }
  if (op == "enum") {
    CdsPtr m = parse_type(str(req, "from"), ws_).value();
    CdsPtr n = parse_type(str(req, "to"), ws_).value();
    json algs = json::array();
    for (const auto& f : enumerate_algorithms(exponential(m, n))) algs.push_back(to_string(f.state()));
    return {{"ok", true}, {"count", algs.size()}, {"algorithms", std::move(algs)}};
  }
  if (op == "ortho") {
    OrthoResult r = orthogonal(Taster(ws_.get_alg(str(req, "taster"))), ws_.get_alg(str(req, "candidate")));
    return {{"ok", true}, {"orthogonal", r.orthogonal}, {"trace", trace_lines(r.trace)}};
  }
  if (op == "member") {
    const BehaviourEntry& b = ws_.get_behaviour(str(req, "behaviour"));
    const SeqAlg& s = ws_.get_alg(str(req, "candidate"));
    json tests = json::object();
    for (std::size_t i = 0; i < b.tests.size(); ++i)
      tests[b.tests[i]] = orthogonal(b.behaviour.tests()[i], s).orthogonal;
    return {{"ok", true}, {"member", member(b.behaviour, s)}, {"tests", std::move(tests)}};
  }
  if (op == "subtype") {
    SubtypeVerdict v = subtype(ws_.get_behaviour(str(req, "sub")).behaviour,
                               ws_.get_behaviour(str(req, "super")).behaviour, req.value("semantic", false));
    json reply = {{"ok", true}, {"syntactic", v.syntactic}};
    if (v.semantic) reply["semantic"] = *v.semantic;
    return reply;
  }
  throw BadRequest{"unknown op '" + op + "'"};
}

}  // namespace cdslab

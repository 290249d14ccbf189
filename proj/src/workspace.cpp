#include "cdslab/workspace.hpp"

#include "cdslab/fixtures.hpp"

namespace cdslab {

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorKind::UnknownName, std::string("no ") + kind + " named " + name);
  return it->second;
}

template <class Map, class T>
void insert_new(Map& m, const std::string& name, T value, const char* kind) {
  if (m.count(name))
    throw Error(ErrorKind::DuplicateId, std::string(kind) + " " + name + " is already defined");
  m.emplace(name, std::move(value));
}

bool same_cds(const CdsPtr& a, const CdsPtr& b) {
  return a == b || (a->name() == b->name() && a->same_structure(*b));
}

}  // namespace

bool TableEntry::operator==(const TableEntry& o) const {
  return note == o.note && same_cds(table.from, o.table.from) && same_cds(table.to, o.table.to) &&
         table == o.table;
}

bool BehaviourEntry::operator==(const BehaviourEntry& o) const {
  return tests == o.tests && same_cds(behaviour.candidate_type(), o.behaviour.candidate_type()) &&
         behaviour.tests() == o.behaviour.tests();
}

Workspace::Workspace() {
  cds_.emplace("unit", empty_cds());
  cds_.emplace("O", observation_cds());
}

const CdsPtr& Workspace::get_cds(const std::string& name) const { return lookup(cds_, name, "Cds"); }
const SeqAlg& Workspace::get_alg(const std::string& name) const { return lookup(algs_, name, "algorithm"); }
const TableEntry& Workspace::get_table(const std::string& name) const {
  return lookup(tables_, name, "table");
}
const BehaviourEntry& Workspace::get_behaviour(const std::string& name) const {
  return lookup(behaviours_, name, "behaviour");
}

void Workspace::add_cds(const std::string& name, CdsPtr d) { insert_new(cds_, name, std::move(d), "Cds"); }
void Workspace::add_alg(const std::string& name, SeqAlg f) {
  insert_new(algs_, name, std::move(f), "algorithm");
}
void Workspace::add_table(const std::string& name, TableEntry t) {
  insert_new(tables_, name, std::move(t), "table");
}
void Workspace::add_behaviour(const std::string& name, BehaviourEntry b) {
  insert_new(behaviours_, name, std::move(b), "behaviour");
}

void Workspace::merge(const Workspace& delta) {
  std::vector<Diagnostic> clashes;
  auto check = [&](const auto& mine, const auto& theirs, const char* kind) {
    for (const auto& [name, _] : theirs)
      if (mine.count(name) && !(kind == std::string("Cds") && delta.is_builtin(name)))
        clashes.push_back({ErrorKind::DuplicateId, std::string(kind) + " " + name + " is already defined"});
  };
  check(cds_, delta.cds_, "Cds");
  check(algs_, delta.algs_, "algorithm");
  check(tables_, delta.tables_, "table");
  check(behaviours_, delta.behaviours_, "behaviour");
  if (!clashes.empty()) throw Error(std::move(clashes));
  for (const auto& [name, d] : delta.cds_)
    if (!delta.is_builtin(name)) cds_.emplace(name, d);
  algs_.insert(delta.algs_.begin(), delta.algs_.end());
  tables_.insert(delta.tables_.begin(), delta.tables_.end());
  behaviours_.insert(delta.behaviours_.begin(), delta.behaviours_.end());
  types_.insert(delta.types_.begin(), delta.types_.end());
}

bool Workspace::is_builtin(const std::string& cds_name) const {
  auto it = cds_.find(cds_name);
  if (it == cds_.end()) return false;
  return (cds_name == "unit" && it->second == empty_cds()) ||
         (cds_name == "O" && it->second == observation_cds());
}

std::vector<std::string> Workspace::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : cds_)
    if (!is_builtin(name)) out.push_back(name);
  for (const auto& [name, _] : algs_) out.push_back(name);
  for (const auto& [name, _] : tables_) out.push_back(name);
  for (const auto& [name, _] : behaviours_) out.push_back(name);
  return out;
}

CdsPtr Workspace::intern_type(const std::string& key, const std::function<CdsPtr()>& build) const {
  auto it = types_.find(key);
  if (it != types_.end()) return it->second;
  CdsPtr d = build();
  types_.emplace(key, d);
  return d;
}

bool Workspace::operator==(const Workspace& o) const {
  if (cds_.size() != o.cds_.size()) return false;
  for (const auto& [name, d] : cds_) {
    auto it = o.cds_.find(name);
    if (it == o.cds_.end() || !same_cds(d, it->second)) return false;
  }
  return algs_ == o.algs_ && tables_ == o.tables_ && behaviours_ == o.behaviours_;
}

const Workspace& fixtures_workspace() {
  namespace fx = fixtures;
  static const Workspace ws = [] {
    Workspace w;
    w.add_cds("B", fx::bool1());
    w.add_cds("B2", fx::bool2());
    w.add_cds("B3", fx::bool3());
    w.add_cds("o", fx::game_o());
    w.add_cds("Sin", fx::sigma_in());
    w.add_cds("Sout", fx::sigma_out());
    w.add_cds("Rec", fx::record_cds());

    w.add_alg("A", fx::schedule_a());
    w.add_alg("A'", fx::schedule_a_prime());
    w.add_alg("A3", fx::schedule_a3());
    w.add_alg("A3'", fx::schedule_a3_prime());
    w.add_alg("not", fx::not_alg());
    w.add_alg("bot", fx::o_bottom());
    w.add_alg("true", fx::o_true());
    w.add_alg("false", fx::o_false());
    w.add_alg("T2", fx::taster_t2().algorithm());
    for (const char* field : {"year", "price", "colour"})
      w.add_alg(std::string("has_") + field, fx::presence(field).algorithm());

    const std::string editorial = "rows beyond the characteristic ones are an editorial completion";
    w.add_table("por", {fx::por_table(true), editorial});
    w.add_table("por0", {fx::por_table(false), editorial});
    w.add_table("bk", {fx::bk_table(), editorial});
    w.add_table("and", {fx::and_table(), ""});

    w.add_behaviour("Needs2", {Behaviour(fx::three_arg_type(), {fx::taster_t2()}), {"T2"}});
    w.add_behaviour("YP", {fx::year_price(), {"has_year", "has_price"}});
    w.add_behaviour("YPC", {fx::year_price_colour(), {"has_year", "has_price", "has_colour"}});

    for (const auto& [_, f] : w.algs())
      for (const CdsPtr& d : {f.space(), f.from_ptr()})
        if (d->name().front() == '(') w.intern_type(d->name(), [&] { return d; });
    return w;
  }();
  return ws;
}

}  // namespace cdslab

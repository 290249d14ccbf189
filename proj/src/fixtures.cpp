#include "cdslab/fixtures.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cdslab::fixtures {

namespace {

CdsPtr arrow_of(const CdsPtr& from, const CdsPtr& to) {
  static std::mutex mu;
  static std::map<std::pair<const Cds*, const Cds*>, CdsPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{from.get(), to.get()}];
  if (!slot) slot = exponential(from, to);
  return slot;
}

FunEvent ask(State x, const char* out, const char* cell) {
  return {FunCell{std::move(x), CellId{out}}, FunValue::valof(CellId{cell})};
}

FunEvent put(State x, const char* out, const char* value) {
  return {FunCell{std::move(x), CellId{out}}, FunValue::output(ValueId{value})};
}

SeqAlg build(const CdsPtr& from, const CdsPtr& to, const std::vector<FunEvent>& events) {
  return validate_algorithm(arrow_of(from, to), events).value();
}

}  // namespace

CdsPtr flat_cds(std::string name, const std::vector<std::string>& cells,
                const std::vector<std::string>& values) {
  std::vector<CellId> cs;
  std::vector<ValueId> vs;
  std::vector<Event> events;
  std::map<CellId, std::vector<Precondition>> enabling;
  for (const auto& c : cells) {
    cs.emplace_back(c);
    enabling[CellId{c}] = {std::nullopt};
    for (const auto& v : values) events.push_back(event(c, v));
  }
  for (const auto& v : values) vs.emplace_back(v);
  return std::make_shared<const Cds>(
      make_cds(std::move(name), std::move(cs), std::move(vs), std::move(events),
               std::move(enabling))
          .value());
}

CdsPtr game_o() {
  static const CdsPtr o = flat_cds("o", {"?"}, {});
  return o;
}

CdsPtr bool1() {
  static const CdsPtr b = flat_cds("B", {"out"}, {"tt", "ff"});
  return b;
}

CdsPtr bool2() {
  static const CdsPtr b = flat_cds("B2", {"a", "b"}, {"tt", "ff"});
  return b;
}

CdsPtr bool3() {
  static const CdsPtr b = flat_cds("B3", {"a", "b", "c"}, {"tt", "ff"});
  return b;
}

SeqAlg schedule_a() {
  return build(bool2(), bool1(),
               {ask({}, "out", "b"), ask({{"b", "tt"}}, "out", "a"),
                put({{"a", "tt"}, {"b", "tt"}}, "out", "tt")});
}

SeqAlg schedule_a_prime() {
  return build(bool2(), bool1(),
               {ask({}, "out", "a"), ask({{"a", "tt"}}, "out", "b"),
                put({{"a", "tt"}, {"b", "tt"}}, "out", "tt")});
}

SeqAlg schedule_a3() {
  return build(bool3(), bool1(),
               {ask({}, "out", "b"), ask({{"b", "tt"}}, "out", "a"),
                put({{"a", "tt"}, {"b", "tt"}}, "out", "tt")});
}

SeqAlg schedule_a3_prime() {
  return build(bool3(), bool1(),
               {ask({}, "out", "a"), ask({{"a", "tt"}}, "out", "b"),
                put({{"a", "tt"}, {"b", "tt"}}, "out", "tt")});
}

SeqAlg not_alg() {
  return build(bool1(), bool1(),
               {ask({}, "out", "out"), put({{"out", "tt"}}, "out", "ff"),
                put({{"out", "ff"}}, "out", "tt")});
}

FunTable por_table(bool with_ff_row) {
  std::vector<std::pair<State, State>> rows = {
      {State{{"a", "tt"}}, State{{"out", "tt"}}},
      {State{{"b", "tt"}}, State{{"out", "tt"}}},
  };
  if (with_ff_row) rows.push_back({State{{"a", "ff"}, {"b", "ff"}}, State{{"out", "ff"}}});
  return upward_closure(bool2(), bool1(), rows);
}

FunTable bk_table() {
  return upward_closure(bool3(), bool1(),
                        {
                            {State{{"a", "tt"}, {"b", "ff"}}, State{{"out", "tt"}}},
                            {State{{"a", "ff"}, {"c", "tt"}}, State{{"out", "tt"}}},
                            {State{{"b", "tt"}, {"c", "ff"}}, State{{"out", "tt"}}},
                        });
}

FunTable and_table() { return fun_of(schedule_a()); }

CdsPtr sigma_in() {
  static const CdsPtr s = flat_cds("Sin", {"in"}, {"star"});
  return s;
}

CdsPtr sigma_out() {
  static const CdsPtr s = flat_cds("Sout", {"out"}, {"star"});
  return s;
}

CdsPtr three_arg_type() {
  static const CdsPtr t = [] {
    const Cds factors[] = {*sigma_in(), *sigma_in(), *sigma_in()};
    return arrow_of(std::make_shared<const Cds>(product(factors)), sigma_out());
  }();
  return t;
}

Taster taster_t2() {
  return neededness_taster(three_arg_type(), CellId{"out"}, CellId{product_tag(1) + "in"});
}

CdsPtr record_cds() {
  static const CdsPtr r = [] {
    std::vector<Event> events = {event("year", "2001"), event("year", "2002"),
                                 event("price", "cheap"), event("price", "dear"),
                                 event("colour", "red"), event("colour", "blue")};
    std::map<CellId, std::vector<Precondition>> enabling;
    for (const char* c : {"year", "price", "colour"}) enabling[CellId{c}] = {std::nullopt};
    return std::make_shared<const Cds>(
        make_cds("Rec", {CellId{"year"}, CellId{"price"}, CellId{"colour"}},
                 {ValueId{"2001"}, ValueId{"2002"}, ValueId{"cheap"}, ValueId{"dear"},
                  ValueId{"red"}, ValueId{"blue"}},
                 std::move(events), std::move(enabling))
            .value());
  }();
  return r;
}

Taster presence(const std::string& field) { return presence_taster(record_cds(), CellId{field}); }

Behaviour year_price() {
  return Behaviour(record_type(record_cds()), {presence("year"), presence("price")});
}

Behaviour year_price_colour() {
  return Behaviour(record_type(record_cds()),
                   {presence("year"), presence("price"), presence("colour")});
}

namespace {

CdsPtr oo_type() {
  static const CdsPtr t =
      arrow_of(std::make_shared<const Cds>(product(*game_o(), *game_o())), game_o());
  return t;
}

}  // namespace

SeqAlg o_bottom() { return SeqAlg(oo_type(), State{}); }

SeqAlg o_true() {
  return validate_algorithm(oo_type(), std::vector<FunEvent>{ask({}, "?", "1.?")}).value();
}

SeqAlg o_false() {
  return validate_algorithm(oo_type(), std::vector<FunEvent>{ask({}, "?", "2.?")}).value();
}

BooleanIso boolean_iso() {
  BooleanIso iso;
  iso.pairs = {{State{}, o_bottom()},
               {State{{"out", "tt"}}, o_true()},
               {State{{"out", "ff"}}, o_false()}};

  const auto domain = enumerate_states(*bool1());
  const auto algorithms = enumerate_algorithms(oo_type());
  bool ok = domain.size() == iso.pairs.size() && algorithms.size() == iso.pairs.size();
  for (const auto& x : domain) {
    ok = ok && std::count_if(iso.pairs.begin(), iso.pairs.end(),
                             [&](const auto& p) { return p.first == x; }) == 1;
  }
  for (const auto& f : algorithms) {
    ok = ok && std::count_if(iso.pairs.begin(), iso.pairs.end(),
                             [&](const auto& p) { return p.second == f; }) == 1;
  }
  iso.bijective = ok;
  return iso;
}

}  // namespace cdslab::fixtures

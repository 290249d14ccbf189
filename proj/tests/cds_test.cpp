#include <doctest.h>

#include <algorithm>

#include "cdslab/cds.hpp"
#include "cdslab/fixtures.hpp"

using namespace cdslab;
using cdslab::fixtures::flat_cds;

namespace {

// q is enabled only by (p, tt).
Cds chain_cds() {
  return make_cds("chain", {CellId{"p"}, CellId{"q"}}, {ValueId{"tt"}, ValueId{"ff"}},
                  {event("p", "tt"), event("p", "ff"), event("q", "tt")},
                  {{CellId{"p"}, {std::nullopt}}, {CellId{"q"}, {event("p", "tt")}}})
      .value();
}

// Independent count of the states of a Cds: every subset of events, kept
// when check_state accepts it.
std::size_t brute_force_state_count(const Cds& d) {
  std::vector<Event> evs(d.events().begin(), d.events().end());
  REQUIRE(evs.size() < 20);
  std::size_t count = 0;
  for (unsigned mask = 0; mask < (1u << evs.size()); ++mask) {
    std::vector<Event> subset;
    for (std::size_t i = 0; i < evs.size(); ++i)
      if (mask & (1u << i)) subset.push_back(evs[i]);
    if (check_state(d, subset)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("make_cds builds flat B3 and game o") {
  auto b3 = flat_cds("B3", {"a", "b", "c"}, {"tt", "ff"});
  CHECK(b3->cells().size() == 3);
  CHECK(b3->events().size() == 6);
  CHECK(check_state(*b3, State{{"a", "tt"}, {"b", "ff"}}));

  auto o = fixtures::game_o();
  CHECK(o->cells() == std::vector<CellId>{CellId{"?"}});
  CHECK(o->values().empty());
  CHECK(o->events().empty());
}

TEST_CASE("make_cds reports every violation") {
  auto bad = make_cds("bad", {CellId{"a"}, CellId{"b"}, CellId{"a"}}, {ValueId{"tt"}},
                      {event("a", "zz"), event("x", "tt")},
                      {{CellId{"a"}, {std::nullopt}}});
  REQUIRE_FALSE(bad);
  CHECK(bad.has_error(ErrorKind::UnknownValue));
  CHECK(bad.has_error(ErrorKind::UnknownCell));
  CHECK(bad.has_error(ErrorKind::DuplicateId));
  CHECK(bad.has_error(ErrorKind::NoPrecondition));  // b

  auto clash = make_cds("clash", {CellId{"tt"}}, {ValueId{"tt"}}, {}, {{CellId{"tt"}, {std::nullopt}}});
  CHECK(clash.has_error(ErrorKind::DuplicateId));

  CHECK_THROWS_AS(flat_cds("dup", {"a", "a"}, {"tt"}), Error);
}

TEST_CASE("check_state detects non-functional and unsafe sets") {
  auto b3 = flat_cds("B3", {"a", "b", "c"}, {"tt", "ff"});
  std::vector<Event> twice = {event("a", "tt"), event("a", "ff")};
  auto r = check_state(*b3, twice);
  CHECK(r.has_error(ErrorKind::NotFunctional));

  Cds chain = chain_cds();
  std::vector<Event> lone = {event("q", "tt")};
  CHECK(check_state(chain, lone).has_error(ErrorKind::NotSafe));
  std::vector<Event> justified = {event("q", "tt"), event("p", "tt")};
  CHECK(check_state(chain, justified));
  std::vector<Event> wrong_justifier = {event("q", "tt"), event("p", "ff")};
  CHECK(check_state(chain, wrong_justifier).has_error(ErrorKind::NotSafe));
}

TEST_CASE("accessible_cells") {
  auto b3 = flat_cds("B3", {"a", "b", "c"}, {"tt", "ff"});
  CHECK(accessible_cells(*b3, State{}) ==
        std::vector<CellId>{CellId{"a"}, CellId{"b"}, CellId{"c"}});
  CHECK(accessible_cells(*b3, State{{"b", "tt"}}) == std::vector<CellId>{CellId{"a"}, CellId{"c"}});
  Cds chain = chain_cds();
  CHECK(accessible_cells(chain, State{}) == std::vector<CellId>{CellId{"p"}});
  CHECK(accessible_cells(chain, State{{"p", "tt"}}) == std::vector<CellId>{CellId{"q"}});
  CHECK(accessible_cells(chain, State{{"p", "ff"}}).empty());
}

TEST_CASE("enumerate_states agrees with subset enumeration") {
  CHECK(enumerate_states(*fixtures::bool1()).size() == 3);
  CHECK(enumerate_states(*fixtures::bool3()).size() == 27);
  CHECK(enumerate_states(*flat_cds("unit", {"u"}, {"star"})).size() == 2);
  CHECK(enumerate_states(*fixtures::game_o()).size() == 1);
  for (const Cds& d : {*fixtures::bool1(), *fixtures::bool2(), chain_cds(), *fixtures::record_cds()})
    CHECK(enumerate_states(d).size() == brute_force_state_count(d));

  auto states = enumerate_states(*fixtures::bool2());
  CHECK(std::is_sorted(states.begin(), states.end()));
  CHECK(states.front() == State{});
}

TEST_CASE("enumerate_states honours the budget") {
  CHECK_THROWS_AS(enumerate_states(*fixtures::bool3(), Budget{10}), Error);
}

TEST_CASE("product") {
  auto o = fixtures::game_o();
  Cds oo = product(*o, *o);
  CHECK(oo.cells() == std::vector<CellId>{CellId{"1.?"}, CellId{"2.?"}});
  CHECK(enumerate_states(oo).size() == 1);

  auto b = fixtures::bool1();
  Cds bb = product(*b, *b);
  auto states = enumerate_states(bb);
  CHECK(states.size() == 9);  // 3 x 3
  for (const auto& z : states) {
    State left = project(z, 0);
    State right = project(z, 1);
    CHECK(check_state(*b, left));
    CHECK(check_state(*b, right));
    CHECK(*inject(left, 0).unite(inject(right, 1)) == z);
  }

  Cds unit = make_cds("empty", {}, {}, {}, {}).value();
  Cds b_unit = product(*b, unit);
  CHECK(enumerate_states(b_unit).size() == 3);

  Cds chain = chain_cds();
  Cds cc = product(chain, *b);
  CHECK(cc.enabling(CellId{"1.q"}) == std::vector<Precondition>{event("1.p", "tt")});
}

TEST_CASE("lift_err") {
  Cds lb = lift_err(*fixtures::bool1());
  CHECK(lb.has_event(Event{CellId{"out"}, kErr}));
  CHECK(enumerate_states(lb).size() == 4);
  CHECK(check_state(lift_err(*fixtures::bool2()), State{{"a", "err"}}));

  Cds lo = lift_err(*fixtures::game_o());
  CHECK(lo.events() == std::set<Event>{Event{CellId{"?"}, kErr}});

  CHECK_THROWS_AS(lift_err(lb), Error);
  try {
    lift_err(lb);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ErrAlreadyPresent);
  }
}

TEST_CASE("states: removing an event leaves a state or an unsafe set") {
  Cds chain = chain_cds();
  for (const Cds& d : {chain, *fixtures::bool2()}) {
    for (const auto& x : enumerate_states(d)) {
      CHECK(check_state(d, x));
      for (const auto& [c, v] : x.map()) {
        auto smaller = check_state(d, x.without(c));
        CHECK((smaller.ok() || smaller.has_error(ErrorKind::NotSafe)));
      }
      for (const auto& c : accessible_cells(d, x)) CHECK_FALSE(x.contains(c));
    }
  }
  CHECK_FALSE(check_state(chain, State{{"p", "tt"}, {"q", "tt"}}.without(CellId{"p"})));
}

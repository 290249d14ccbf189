#include <doctest.h>

#include "cdslab/fixtures.hpp"

using namespace cdslab;
namespace fx = cdslab::fixtures;

TEST_CASE("flat Cds state counts") {
  CHECK(enumerate_states(*fx::bool1()).size() == 3);
  CHECK(enumerate_states(*fx::bool3()).size() == 27);
  CHECK(enumerate_states(*fx::flat_cds("unit", {"u"}, {"star"})).size() == 2);
  CHECK(enumerate_states(*fx::game_o()) == std::vector<State>{State{}});
  CHECK_THROWS_AS(fx::flat_cds("X", {"a", "a"}, {"tt"}), Error);
  CHECK_THROWS_AS(fx::flat_cds("X", {"a"}, {"tt", "tt"}), Error);
}

TEST_CASE("fixture algorithms validate") {
  for (const auto& f : {fx::schedule_a(), fx::schedule_a_prime(), fx::schedule_a3(),
                        fx::schedule_a3_prime(), fx::not_alg(), fx::o_true(), fx::o_false()}) {
    std::vector<FunEvent> moves(f.moves().begin(), f.moves().end());
    CHECK(validate_algorithm(f.space(), moves).ok());
  }
  CHECK_FALSE(fx::schedule_a() == fx::schedule_a_prime());
  CHECK(fun_of(fx::schedule_a()) == fun_of(fx::schedule_a_prime()));
  CHECK(fun_of(fx::schedule_a3()) == fun_of(fx::schedule_a3_prime()));
  CHECK(to_string(fx::schedule_a().state()) ==
        "{<{a=tt,b=tt}|-out>=output tt,<{b=tt}|-out>=valof a,<{}|-out>=valof b}");
}

TEST_CASE("not") {
  FunTable t = fun_of(fx::not_alg());
  CHECK(t(State{{"out", "tt"}}) == State{{"out", "ff"}});
  CHECK(t(State{{"out", "ff"}}) == State{{"out", "tt"}});
  CHECK(t(State{}).empty());
}

TEST_CASE("tables validate") {
  CHECK(check_table(fx::por_table()).empty());
  CHECK(check_table(fx::por_table(false)).empty());
  CHECK(check_table(fx::bk_table()).empty());
  CHECK(check_table(fx::and_table()).empty());
}

TEST_CASE("booleans as strategies of (o * o) -> o") {
  const auto algs = enumerate_algorithms(exponential(
      std::make_shared<const Cds>(product(*fx::game_o(), *fx::game_o())), fx::game_o()));
  REQUIRE(algs.size() == 3);
  CHECK(algs[0] == fx::o_bottom());
  CHECK(algs[1] == fx::o_true());
  CHECK(algs[2] == fx::o_false());
  CHECK(to_string(fx::o_true().state()) == "{<{}|-?>=valof 1.?}");

  fx::BooleanIso iso = fx::boolean_iso();
  CHECK(iso.bijective);
  REQUIRE(iso.pairs.size() == 3);
  CHECK(iso.pairs[1].first == State{{"out", "tt"}});
  CHECK(iso.pairs[1].second == fx::o_true());
}

TEST_CASE("taster and record fixtures") {
  CHECK(fx::taster_t2().algorithm().size() == 2);
  CHECK(fx::year_price().tests().size() == 2);
  CHECK(fx::year_price_colour().tests().size() == 3);
  CHECK(enumerate_states(*fx::record_cds()).size() == 27);
}

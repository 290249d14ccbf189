#include <doctest.h>

#include <memory>

#include "cdslab/fixtures.hpp"
#include "cdslab/interaction.hpp"

using namespace cdslab;
namespace fx = cdslab::fixtures;

namespace {

const CellId kOut{"out"};

std::vector<Move> moves(std::initializer_list<std::pair<Move::Kind, const char*>> ms) {
  std::vector<Move> out;
  for (const auto& [k, n] : ms) out.push_back({k, n});
  return out;
}

// Checks the alternation and table-chain invariants of a finished trace.
void check_trace_shape(const Trace& t) {
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const Polarity expected = i % 2 == 0 ? Polarity::Player : Polarity::Opponent;
    CHECK(t.moves[i].polarity() == expected);
    if (t.moves[i].kind == Move::Kind::Output) CHECK(i + 1 == t.moves.size());
  }
  std::size_t answers = 0;
  for (const auto& m : t.moves)
    if (m.kind == Move::Kind::Answer && m.name != "err") ++answers;
  REQUIRE(t.tables.size() == answers);
  for (std::size_t i = 0; i < t.tables.size(); ++i) {
    CHECK(t.tables[i].size() == i + 1);
    if (i > 0) CHECK(t.tables[i - 1].subset_of(t.tables[i]));
  }
}

}  // namespace

TEST_CASE("apply: error values separate A from A'") {
  StaticState arg(State{{"a", "err"}});
  Trace ta = apply(fx::schedule_a(), arg, kOut);
  CHECK(ta.outcome == Outcome::stuck());
  CHECK(ta.moves == moves({{Move::Kind::Valof, "b"}}));

  Trace tp = apply(fx::schedule_a_prime(), arg, kOut);
  CHECK(tp.outcome == Outcome::err());
  CHECK(tp.moves == moves({{Move::Kind::Valof, "a"}, {Move::Kind::Answer, "err"}}));
}

TEST_CASE("apply: A on (tt, tt)") {
  StaticState arg(State{{"a", "tt"}, {"b", "tt"}});
  Trace t = apply(fx::schedule_a(), arg, kOut);
  CHECK(t.outcome == Outcome::of(ValueId{"tt"}));
  CHECK(t.moves == moves({{Move::Kind::Valof, "b"},
                          {Move::Kind::Answer, "tt"},
                          {Move::Kind::Valof, "a"},
                          {Move::Kind::Answer, "tt"},
                          {Move::Kind::Output, "tt"}}));
  CHECK(to_text(t) == "REQ out\nVALOF b\nANS tt\nVALOF a\nANS tt\nOUT tt\nRESULT value:tt\n");
  CHECK(to_text(t, true) ==
        "REQ out\nVALOF b\nANS tt\nTABLE {b=tt}\nVALOF a\nANS tt\nTABLE {a=tt,b=tt}\n"
        "OUT tt\nRESULT value:tt\n");
  check_trace_shape(t);
}

TEST_CASE("apply: errors") {
  StaticState arg(State{});
  CHECK_THROWS_AS(apply(fx::schedule_a(), arg, CellId{"nope"}), Error);

  StaticState ill(State{{"b", "maybe"}});
  try {
    apply(fx::schedule_a(), ill, kOut);
    FAIL("expected ArgumentAnswerIllTyped");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArgumentAnswerIllTyped);
  }
}

TEST_CASE("apply is deterministic and respects err short-circuit") {
  const auto fixtures = {fx::schedule_a(), fx::schedule_a_prime()};
  Cds lifted = lift_err(*fx::bool2());
  for (const auto& f : fixtures) {
    for (const auto& x : enumerate_states(lifted)) {
      StaticState arg1(x), arg2(x);
      Trace t1 = apply(f, arg1, kOut);
      Trace t2 = apply(f, arg2, kOut);
      CHECK(to_text(t1, true) == to_text(t2, true));
      CHECK(t1 == t2);
      check_trace_shape(t1);
      // Every query targets an unfilled, enabled cell of the current table.
      State table;
      for (std::size_t i = 0; i < t1.moves.size(); ++i) {
        if (t1.moves[i].kind != Move::Kind::Valof) continue;
        CellId c{t1.moves[i].name};
        CHECK_FALSE(table.contains(c));
        CHECK(f.from().enabled_in(c, table));
        if (i + 1 < t1.moves.size() && t1.moves[i + 1].name != "err")
          table.insert({c, ValueId{t1.moves[i + 1].name}});
      }
      bool saw_err = false;
      for (const auto& m : t1.moves) {
        if (saw_err) FAIL("move after err");
        if (m.kind == Move::Kind::Answer && m.name == "err") saw_err = true;
      }
      CHECK(saw_err == (t1.outcome == Outcome::err()));
    }
  }
}

TEST_CASE("sessions keep their table across requests") {
  auto a = fx::schedule_a();
  Session s(a, std::make_shared<StaticState>(State{{"a", "tt"}, {"b", "tt"}}));
  CHECK(s.request(kOut) == Session::Status::Done);
  Trace first = s.trace();
  CHECK(first.moves.size() == 5);
  CHECK(s.table() == State{{"a", "tt"}, {"b", "tt"}});

  s.request(kOut);
  Trace second = s.trace();
  CHECK(second.outcome == first.outcome);
  CHECK(second.moves == moves({{Move::Kind::Output, "tt"}}));

  s.reset();
  CHECK(s.table().empty());
  s.request(kOut);
  CHECK(s.trace().moves.size() == 5);
}

TEST_CASE("sessions on the copycat of a product") {
  auto b2 = std::make_shared<const Cds>(
      product(*fx::flat_cds("A", {"a"}, {"tt", "ff"}), *fx::flat_cds("Bb", {"b"}, {"tt", "ff"})));
  Session s(identity_algorithm(b2), std::make_shared<StaticState>(State{{"1.a", "tt"}, {"2.b", "ff"}}));
  s.request(CellId{"1.a"});
  CHECK(s.trace().outcome == Outcome::of(ValueId{"tt"}));
  s.request(CellId{"2.b"});
  CHECK(s.trace().outcome == Outcome::of(ValueId{"ff"}));
  CHECK(s.trace().moves.size() == 3);
  s.request(CellId{"2.b"});
  CHECK(s.trace().outcome == Outcome::of(ValueId{"ff"}));
}

TEST_CASE("manual sessions pause at each query") {
  Session s(fx::schedule_a(), std::make_shared<InteractiveOracle>());
  CHECK_THROWS_AS(s.answer(Answer::of(ValueId{"tt"})), Error);
  CHECK(s.request(kOut) == Session::Status::AwaitingAnswer);
  CHECK(s.pending() == CellId{"b"});
  CHECK(to_text(s.trace()) == "REQ out\nVALOF b\n");
  CHECK_THROWS_AS(s.request(kOut), Error);

  try {
    s.answer(Answer::of(ValueId{"maybe"}));
    FAIL("expected IllTypedAnswer");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllTypedAnswer);
  }
  CHECK(s.pending() == CellId{"b"});

  CHECK(s.answer(Answer::of(ValueId{"tt"})) == Session::Status::AwaitingAnswer);
  CHECK(s.pending() == CellId{"a"});
  CHECK(s.answer(Answer::of(ValueId{"tt"})) == Session::Status::Done);
  CHECK(to_text(s.trace()) == "REQ out\nVALOF b\nANS tt\nVALOF a\nANS tt\nOUT tt\nRESULT value:tt\n");

  Session e(fx::schedule_a(), std::make_shared<InteractiveOracle>());
  e.request(kOut);
  CHECK(e.answer(Answer::of(kErr)) == Session::Status::Done);
  CHECK(e.trace().outcome == Outcome::err());
}

TEST_CASE("fun_of") {
  FunTable fa = fun_of(fx::schedule_a());
  FunTable fp = fun_of(fx::schedule_a_prime());
  CHECK(fa.rows.size() == 9);
  CHECK(fa == fp);
  CHECK_FALSE(fx::schedule_a() == fx::schedule_a_prime());
  for (const auto& [x, y] : fa.rows) {
    if (x == State{{"a", "tt"}, {"b", "tt"}})
      CHECK(y == State{{"out", "tt"}});
    else
      CHECK(y.empty());
  }

  SeqAlg empty(exponential(fx::bool2(), fx::bool1()), State{});
  for (const auto& [x, y] : fun_of(empty).rows) CHECK(y.empty());
}

TEST_CASE("fun_of is monotone for every algorithm of B2 -> B") {
  for (const auto& f : enumerate_algorithms(exponential(fx::bool2(), fx::bool1()))) {
    FunTable t = fun_of(f);
    for (const auto& [x, fx_] : t.rows)
      for (const auto& [y, fy] : t.rows)
        if (x.subset_of(y)) CHECK(fx_.subset_of(fy));
  }
}

TEST_CASE("compose agrees with composition of functions") {
  auto check_compose = [](const SeqAlg& f, const SeqAlg& g) {
    SeqAlg h = compose(f, g);
    FunTable tf = fun_of(f), tg = fun_of(g), th = fun_of(h);
    for (const auto& [x, y] : tf.rows) CHECK(th(x) == tg(y));
  };
  check_compose(fx::schedule_a(), fx::not_alg());
  check_compose(fx::schedule_a_prime(), fx::not_alg());
  check_compose(fx::not_alg(), fx::not_alg());
  check_compose(identity_algorithm(fx::bool2()), fx::schedule_a());

  SeqAlg left = compose(identity_algorithm(fx::bool2()), fx::schedule_a());
  CHECK(fun_of(left) == fun_of(fx::schedule_a()));
  CHECK(left == fx::schedule_a());

  SeqAlg right = compose(fx::schedule_a(), identity_algorithm(fx::bool1()));
  CHECK(right.move_at(State{}, kOut) == FunValue::valof(CellId{"b"}));
  CHECK(fun_of(right) == fun_of(fx::schedule_a()));

  CHECK_THROWS_AS(compose(fx::not_alg(), fx::schedule_a()), Error);
}

TEST_CASE("compose over every pair of B -> B algorithms") {
  auto algs = enumerate_algorithms(exponential(fx::bool1(), fx::bool1()));
  for (const auto& f : algs)
    for (const auto& g : algs) {
      SeqAlg h = compose(f, g);
      FunTable tf = fun_of(f), tg = fun_of(g), th = fun_of(h);
      for (const auto& [x, y] : tf.rows) CHECK(th(x) == tg(y));
    }
}

#include <doctest.h>

#include <algorithm>

#include "cdslab/fixtures.hpp"

using namespace cdslab;
namespace fx = cdslab::fixtures;

namespace {

// All 27 total tables of flat B -> flat B.
std::vector<FunTable> all_bool_tables() {
  const auto states = enumerate_states(*fx::bool1());
  std::vector<FunTable> out;
  for (std::size_t i = 0; i < 27; ++i) {
    FunTable t{fx::bool1(), fx::bool1(), {}};
    std::size_t code = i;
    for (const auto& x : states) {
      t.rows[x] = states[code % 3];
      code /= 3;
    }
    out.push_back(std::move(t));
  }
  return out;
}

// Brute-force oracles straight from the definitions.
bool monotone_oracle(const FunTable& t) {
  for (const auto& [x, fx_] : t.rows)
    for (const auto& [y, fy] : t.rows)
      if (x.subset_of(y) && !fx_.subset_of(fy)) return false;
  return true;
}

bool stable_oracle(const FunTable& t) {
  for (const auto& [x, fx_] : t.rows)
    for (const auto& [y, fy] : t.rows) {
      auto z = x.unite(y);
      if (!z || !check_state(*t.from, *z).ok()) continue;
      State m = x.intersect(y);
      if (t(m) != fx_.intersect(fy)) return false;
    }
  return true;
}

std::vector<SeqAlg> brute_realizers(const FunTable& t) {
  std::vector<SeqAlg> out;
  for (const auto& f : enumerate_algorithms(exponential(t.from, t.to)))
    if (fun_of(f) == t) out.push_back(f);
  return out;
}

bool same_set(std::vector<SeqAlg> a, std::vector<SeqAlg> b) {
  auto by_state = [](const SeqAlg& x, const SeqAlg& y) { return x.state() < y.state(); };
  std::sort(a.begin(), a.end(), by_state);
  std::sort(b.begin(), b.end(), by_state);
  return a == b;
}

}  // namespace

TEST_CASE("check_table and upward_closure") {
  FunTable por = fx::por_table();
  CHECK(check_table(por).empty());
  CHECK(por.rows.size() == 9);
  CHECK(por(State{{"a", "tt"}, {"b", "ff"}}) == State{{"out", "tt"}});
  CHECK(por(State{{"a", "ff"}, {"b", "ff"}}) == State{{"out", "ff"}});
  CHECK(por(State{{"a", "ff"}}).empty());

  FunTable partial{fx::bool1(), fx::bool1(), {{State{}, State{}}}};
  CHECK_FALSE(check_table(partial).empty());

  try {
    upward_closure(fx::bool2(), fx::bool1(),
                   {{State{{"a", "tt"}}, State{{"out", "tt"}}},
                    {State{{"b", "tt"}}, State{{"out", "ff"}}}});
    FAIL("expected InvalidTable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidTable);
  }

  FunTable bk = fx::bk_table();
  CHECK(bk.rows.size() == 27);
  CHECK(bk(State{{"a", "tt"}, {"b", "ff"}}) == State{{"out", "tt"}});
  CHECK(bk(State{{"a", "ff"}, {"c", "tt"}}) == State{{"out", "tt"}});
  CHECK(bk(State{{"b", "tt"}, {"c", "ff"}}) == State{{"out", "tt"}});
  CHECK(bk(State{{"a", "tt"}, {"b", "tt"}, {"c", "tt"}}).empty());
}

TEST_CASE("is_monotone") {
  CHECK(is_monotone(fx::por_table()).monotone);
  CHECK(is_monotone(fx::bk_table()).monotone);

  FunTable bad{fx::bool2(), fx::bool1(), {}};
  for (const auto& x : enumerate_states(*fx::bool2())) bad.rows[x] = State{};
  bad.rows[State{}] = State{{"out", "tt"}};
  MonotoneVerdict v = is_monotone(bad);
  CHECK_FALSE(v.monotone);
  REQUIRE(v.counterexample);
  CHECK(v.counterexample->first.subset_of(v.counterexample->second));
  CHECK_FALSE(bad(v.counterexample->first).subset_of(bad(v.counterexample->second)));

  try {
    is_stable(bad);
    FAIL("expected NotMonotone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMonotone);
  }
}

TEST_CASE("por is monotone, not stable, not sequential") {
  for (bool with_ff : {true, false}) {
    FunTable por = fx::por_table(with_ff);
    StableVerdict s = is_stable(por);
    CHECK_FALSE(s.stable);
    REQUIRE(s.counterexample);
    CHECK(s.counterexample->first == State{{"a", "tt"}});
    CHECK(s.counterexample->second == State{{"b", "tt"}});
    CHECK(s.skipped.empty());
    CHECK(sequential_realizers(por).empty());
    CHECK(brute_realizers(por).empty());
  }
}

TEST_CASE("BK is stable and not sequential") {
  FunTable bk = fx::bk_table();
  CHECK(is_stable(bk).stable);
  CHECK(stable_oracle(bk));
  CHECK(sequential_realizers(bk).empty());
}

TEST_CASE("the and-table has A and A' among its realizers") {
  FunTable t = fx::and_table();
  CHECK(is_stable(t).stable);
  auto rs = sequential_realizers(t);
  CHECK(std::count(rs.begin(), rs.end(), fx::schedule_a()) == 1);
  CHECK(std::count(rs.begin(), rs.end(), fx::schedule_a_prime()) == 1);
  for (const auto& f : rs) CHECK(fun_of(f) == t);
  auto oracle = brute_realizers(t);
  CHECK(rs.size() == oracle.size());
  CHECK(same_set(rs, oracle));
  CHECK(rs.size() == 4);
}

TEST_CASE("hierarchy and completeness over every table of B -> B") {
  std::size_t sequential = 0, stable = 0, monotone = 0;
  for (const auto& t : all_bool_tables()) {
    Classification c = classify(t);
    CHECK(c.monotone == monotone_oracle(t));
    if (c.monotone) {
      CHECK(c.stable == stable_oracle(t));
      ++monotone;
    }
    if (c.stable) {
      CHECK(c.monotone);
      ++stable;
    }
    if (c.sequential()) {
      CHECK(c.stable);
      ++sequential;
    }
    CHECK(same_set(c.realizers, brute_realizers(t)));
  }
  // Strict maps (3 * 3) plus the two non-strict constants.
  CHECK(monotone == 11);
  CHECK(stable == 11);
  CHECK(sequential == 11);
}

TEST_CASE("classify reports every verdict") {
  Classification por = classify(fx::por_table());
  CHECK(por.monotone);
  CHECK_FALSE(por.stable);
  CHECK_FALSE(por.sequential());
  REQUIRE(por.stable_verdict);

  FunTable bad{fx::bool1(), fx::bool1(), {}};
  for (const auto& x : enumerate_states(*fx::bool1())) bad.rows[x] = State{};
  bad.rows[State{}] = State{{"out", "tt"}};
  Classification c = classify(bad);
  CHECK_FALSE(c.monotone);
  CHECK_FALSE(c.stable);
  CHECK_FALSE(c.stable_verdict);
  CHECK(c.realizers.empty());
}

TEST_CASE("realizer search respects its budget") {
  CHECK_THROWS_AS(sequential_realizers(fx::bk_table(), Budget{5}), Error);
}

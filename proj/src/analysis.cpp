#include "cdslab/analysis.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace cdslab {

std::vector<Diagnostic> check_table(const FunTable& t, Budget budget) {
  std::vector<Diagnostic> errs;
  const auto states = enumerate_states(*t.from, budget);
  for (const auto& x : states)
    if (!t.rows.count(x))
      errs.push_back({ErrorKind::InvalidTable, "no row for " + to_string(x)});
  const std::set<State> known(states.begin(), states.end());
  for (const auto& [x, y] : t.rows) {
    if (!known.count(x))
      errs.push_back({ErrorKind::InvalidTable,
                      to_string(x) + " is not a state of " + t.from->name()});
    auto image = check_state(*t.to, y);
    if (!image)
      for (auto d : image.errors()) {
        d.message = "row " + to_string(x) + ": " + d.message;
        errs.push_back(std::move(d));
      }
  }
  return errs;
}

FunTable upward_closure(CdsPtr from, CdsPtr to, const std::vector<std::pair<State, State>>& rows,
                        Budget budget) {
  FunTable t{from, to, {}};
  for (const auto& x : enumerate_states(*from, budget)) {
    State out;
    for (const auto& [below, image] : rows) {
      if (!below.subset_of(x)) continue;
      auto merged = out.unite(image);
      if (!merged)
        throw Error(ErrorKind::InvalidTable, "rows disagree at " + to_string(x));
      out = std::move(*merged);
    }
    t.rows.emplace(x, std::move(out));
  }
  return t;
}

MonotoneVerdict is_monotone(const FunTable& t) {
  for (const auto& [x, tx] : t.rows)
    for (const auto& [y, ty] : t.rows)
      if (x != y && x.subset_of(y) && !tx.subset_of(ty)) return {false, std::pair{x, y}};
  return {};
}

StableVerdict is_stable(const FunTable& t) {
  if (auto mono = is_monotone(t); !mono.monotone)
    throw Error(ErrorKind::NotMonotone,
                "not monotone at " + to_string(mono.counterexample->first) + " <= " +
                    to_string(mono.counterexample->second));
  StableVerdict verdict;
  for (auto i = t.rows.begin(); i != t.rows.end(); ++i) {
    for (auto j = std::next(i); j != t.rows.end(); ++j) {
      const State& x = i->first;
      const State& y = j->first;
      auto upper = x.unite(y);
      if (!upper || !check_state(*t.from, *upper)) continue;  // not bounded above
      State meet = x.intersect(y);
      auto row = t.rows.find(meet);
      if (row == t.rows.end() || !check_state(*t.from, meet)) {
        verdict.skipped.emplace_back(x, y);
        continue;
      }
      if (row->second != i->second.intersect(j->second)) {
        verdict.stable = false;
        verdict.counterexample = std::pair{x, y};
        return verdict;
      }
    }
  }
  return verdict;
}

namespace {

/// Backtracking over the function cells reachable in a candidate algorithm.
/// Each enabled cell gets exactly one decision: no move, an output, or a
/// query. Options that would contradict the table on some input above the
/// cell's input are pruned; complete candidates are checked with fun_of.
class RealizerSearch {
 public:
  RealizerSearch(const FunTable& t, Budget budget)
      : t_(t), budget_(budget), space_(exponential(t.from, t.to, budget)) {
    for (const auto& [x, y] : t.rows) inputs_.push_back(x);
  }

  std::vector<SeqAlg> run() {
    std::deque<CellId> frontier;
    for (const auto& c : space_->initial_cells()) {
      frontier.push_back(c);
      queued_.insert(c);
    }
    search(frontier);
    std::sort(found_.begin(), found_.end(),
              [](const SeqAlg& a, const SeqAlg& b) { return a.state() < b.state(); });
    return std::move(found_);
  }

 private:
  /// Every input z above x with c enabled in t(z) satisfies ok(t(z)).
  template <class Ok>
  bool holds_above(const State& x, const CellId& c, const std::optional<CellId>& unfilled,
                   Ok ok) const {
    for (const auto& z : inputs_) {
      if (!x.subset_of(z)) continue;
      if (unfilled && z.contains(*unfilled)) continue;
      const State& image = t_.rows.at(z);
      if (!t_.to->enabled_in(c, image) && !image.contains(c)) continue;
      if (!ok(image)) return false;
    }
    return true;
  }

  void search(std::deque<CellId> frontier) {
    if (++nodes_ > budget_.limit)
      throw Error(ErrorKind::BudgetExceeded,
                  "realizer search visited more than " + std::to_string(budget_.limit) + " nodes");
    while (!frontier.empty() && decided_.count(frontier.front())) frontier.pop_front();
    if (frontier.empty()) {
      SeqAlg candidate(space_, events_);
      if (fun_of(candidate, budget_) == t_) found_.push_back(std::move(candidate));
      return;
    }
    const CellId id = frontier.front();
    frontier.pop_front();
    const FunCell& fc = space_->arrow()->decode(id);
    const State& x = fc.input;
    const CellId& out = fc.output;

    decided_.insert(id);

    // No move.
    if (holds_above(x, out, std::nullopt, [&](const State& im) { return !im.contains(out); }))
      search(frontier);

    for (const auto& v : t_.to->values_of(out)) {
      auto same = [&](const State& im) { return im.value_of(out) == v; };
      if (holds_above(x, out, std::nullopt, same)) try_move(id, FunValue::output(v), frontier);
    }

    for (const auto& c : accessible_cells(*t_.from, x)) {
      auto silent = [&](const State& im) { return !im.contains(out); };
      if (holds_above(x, out, c, silent)) try_move(id, FunValue::valof(c), frontier);
    }

    decided_.erase(id);
  }

  void try_move(const CellId& id, const FunValue& mv, std::deque<CellId> frontier) {
    Event e{id, value_id(mv)};
    events_.insert(e);
    std::vector<CellId> added;
    for (const auto& next : space_->enabled_by(e)) {
      if (decided_.count(next) || queued_.count(next)) continue;
      queued_.insert(next);
      added.push_back(next);
      frontier.push_back(next);
    }
    search(std::move(frontier));
    for (const auto& c : added) queued_.erase(c);
    events_.erase(id);
  }

  const FunTable& t_;
  Budget budget_;
  CdsPtr space_;
  std::vector<State> inputs_;
  State events_;
  std::set<CellId> decided_;
  std::set<CellId> queued_;
  std::vector<SeqAlg> found_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::vector<SeqAlg> sequential_realizers(const FunTable& t, Budget budget) {
  return RealizerSearch(t, budget).run();
}

Classification classify(const FunTable& t, Budget budget) {
  Classification c;
  c.monotone_verdict = is_monotone(t);
  c.monotone = c.monotone_verdict.monotone;
  if (c.monotone) {
    c.stable_verdict = is_stable(t);
    c.stable = c.stable_verdict->stable;
  }
  c.realizers = sequential_realizers(t, budget);
  return c;
}

}  // namespace cdslab

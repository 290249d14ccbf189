#include "cdslab/seqalg.hpp"

#include <deque>
#include <set>

namespace cdslab {

std::string to_string(const FunCell& c) {
  return "<" + to_string(c.input) + "|-" + c.output.name + ">";
}

std::string to_string(const FunValue& v) {
  return (v.is_valof() ? "valof " : "output ") + (v.is_valof() ? v.cell().name : v.value().name);
}

const FunCell& Arrow::decode(const CellId& c) const {
  auto it = cells.find(c);
  if (it == cells.end()) throw Error(ErrorKind::UnknownCell, c.name + " is not a function cell");
  return it->second;
}

const FunValue& Arrow::decode(const ValueId& v) const {
  auto it = values.find(v);
  if (it == values.end())
    throw Error(ErrorKind::UnknownValue, v.name + " is not a function value");
  return it->second;
}

CdsPtr exponential(CdsPtr from, CdsPtr to, Budget budget) {
  const Cds& m = *from;
  const Cds& n = *to;
  auto arrow = std::make_shared<Arrow>();
  arrow->from = from;
  arrow->to = to;

  const std::vector<State> states = enumerate_states(m, budget);
  const std::set<State> state_set(states.begin(), states.end());

  std::vector<ValueId> values;
  for (const auto& c : m.cells()) {
    FunValue fv = FunValue::valof(c);
    values.push_back(value_id(fv));
    arrow->values.emplace(values.back(), fv);
  }
  for (const auto& v : n.values()) {
    FunValue fv = FunValue::output(v);
    values.push_back(value_id(fv));
    arrow->values.emplace(values.back(), fv);
  }

  std::vector<CellId> cells;
  std::vector<Event> events;
  std::map<CellId, std::vector<Precondition>> enabling;
  for (const auto& x : states) {
    const auto accessible = accessible_cells(m, x);
    for (const auto& out : n.cells()) {
      FunCell fc{x, out};
      CellId id = cell_id(fc);
      cells.push_back(id);
      arrow->cells.emplace(id, fc);

      for (const auto& c : accessible) events.push_back({id, value_id(FunValue::valof(c))});
      for (const auto& v : n.values_of(out)) events.push_back({id, value_id(FunValue::output(v))});

      auto& en = enabling[id];
      if (x.empty() && n.is_initial(out)) en.push_back(std::nullopt);
      // <x |- c'> is reached from <x \ (c,v) |- c'> after querying c.
      for (const auto& [c, v] : x.map()) {
        State prev = x.without(c);
        if (!state_set.count(prev) || !m.enabled_in(c, prev)) continue;
        en.push_back(Event{cell_id(FunCell{prev, out}), value_id(FunValue::valof(c))});
      }
      // Output events of N's preconditions enable c' at the same input.
      for (const auto& p : n.enabling(out)) {
        if (!p) continue;
        en.push_back(Event{cell_id(FunCell{x, p->cell}), value_id(FunValue::output(p->value))});
      }
    }
  }

  Cds space = make_cds("(" + m.name() + " -> " + n.name() + ")", std::move(cells),
                       std::move(values), std::move(events), std::move(enabling))
                  .value();
  return std::make_shared<const Cds>(with_arrow(std::move(space), std::move(arrow)));
}

// ---------------------------------------------------------------------------

SeqAlg::SeqAlg(CdsPtr space, State state) : space_(std::move(space)), state_(std::move(state)) {
  const Arrow* arrow = space_->arrow();
  if (!arrow) throw Error(ErrorKind::TypeMismatch, space_->name() + " is not a function space");
  for (const auto& [c, v] : state_.map()) moves_.emplace(arrow->decode(c), arrow->decode(v));
}

std::optional<FunValue> SeqAlg::move_at(const State& y, const CellId& c) const {
  auto it = moves_.find(FunCell{y, c});
  if (it == moves_.end()) return std::nullopt;
  return it->second;
}

bool SeqAlg::operator==(const SeqAlg& other) const {
  if (state_ != other.state_) return false;
  return space_ == other.space_ || space_->same_structure(*other.space_);
}

Validated<SeqAlg> validate_algorithm(const CdsPtr& space, std::span<const FunEvent> moves) {
  const Arrow* arrow = space->arrow();
  if (!arrow)
    return std::vector<Diagnostic>{
        {ErrorKind::TypeMismatch, space->name() + " is not a function space"}};
  const Cds& m = *arrow->from;
  const Cds& n = *arrow->to;

  std::vector<Diagnostic> errs;
  std::vector<Event> events;
  for (const auto& [fc, fv] : moves) {
    const std::string where = "at " + to_string(fc) + ": ";
    bool ok = true;
    if (!n.has_cell(fc.output)) {
      errs.push_back({ErrorKind::UnknownCell, where + fc.output.name + " is not an output cell"});
      ok = false;
    } else if (!space->has_cell(cell_id(fc))) {
      auto input = check_state(m, fc.input);
      if (!input)
        for (auto d : input.errors()) {
          d.message = where + "input is not a state: " + d.message;
          errs.push_back(std::move(d));
        }
      else
        errs.push_back({ErrorKind::UnknownCell, where + "no such cell"});
      ok = false;
    }
    if (fv.is_valof()) {
      const CellId c = fv.cell();
      if (!m.has_cell(c)) {
        errs.push_back({ErrorKind::UnknownCell, where + c.name + " is not an input cell"});
        ok = false;
      } else if (fc.input.contains(c)) {
        errs.push_back({ErrorKind::ValofFilledCell, where + "valof " + c.name +
                                                        " but " + c.name + " is already filled"});
        ok = false;
      } else if (!m.enabled_in(c, fc.input)) {
        errs.push_back({ErrorKind::UnknownEvent, where + "valof " + c.name +
                                                     " but " + c.name + " is not enabled"});
        ok = false;
      }
    } else if (n.has_cell(fc.output) && !n.has_event({fc.output, fv.value()})) {
      errs.push_back({ErrorKind::UnknownEvent, where + "output " + fv.value().name +
                                                   " is not a value of " + fc.output.name});
      ok = false;
    }
    if (ok) events.push_back({cell_id(fc), value_id(fv)});
  }
  if (!errs.empty()) return errs;

  auto state = check_state(*space, events);
  if (!state) {
    std::vector<Diagnostic> out = state.errors();
    return out;
  }
  return SeqAlg(space, state.value());
}

Validated<SeqAlg> validate_algorithm(CdsPtr from, CdsPtr to, std::span<const FunEvent> moves) {
  return validate_algorithm(exponential(std::move(from), std::move(to)), moves);
}

std::vector<SeqAlg> enumerate_algorithms(const CdsPtr& space, Budget budget) {
  std::vector<SeqAlg> out;
  for (auto& x : enumerate_states(*space, budget)) out.emplace_back(space, std::move(x));
  return out;
}

SeqAlg grow_algorithm(const CdsPtr& space,
                      const std::function<std::optional<FunValue>(const FunCell&)>& decide) {
  const Arrow& arrow = *space->arrow();
  State state;
  std::set<CellId> seen;
  std::deque<CellId> queue;
  for (const auto& c : space->initial_cells()) {
    seen.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    CellId id = std::move(queue.front());
    queue.pop_front();
    auto mv = decide(arrow.decode(id));
    if (!mv) continue;
    Event e{id, value_id(*mv)};
    if (!space->has_event(e))
      throw Error(ErrorKind::UnknownEvent, to_string(e) + " is not an event of " + space->name());
    state.insert(e);
    for (const auto& next : space->enabled_by(e))
      if (seen.insert(next).second) queue.push_back(next);
  }
  return SeqAlg(space, std::move(state));
}

SeqAlg identity_algorithm(const CdsPtr& m) {
  auto space = exponential(m, m);
  return grow_algorithm(space, [&](const FunCell& fc) -> std::optional<FunValue> {
    if (auto v = fc.input.value_of(fc.output)) return FunValue::output(*v);
    if (m->enabled_in(fc.output, fc.input)) return FunValue::valof(fc.output);
    return std::nullopt;
  });
}

CdsPtr empty_cds() {
  static const CdsPtr empty =
      std::make_shared<const Cds>(make_cds("unit", {}, {}, {}, {}).value());
  return empty;
}

SeqAlg constant_algorithm(const CdsPtr& m, const State& x) {
  auto space = exponential(empty_cds(), m);
  return grow_algorithm(space, [&](const FunCell& fc) -> std::optional<FunValue> {
    if (auto v = x.value_of(fc.output)) return FunValue::output(*v);
    return std::nullopt;
  });
}

}  // namespace cdslab

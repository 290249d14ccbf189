#include "cdslab/cds.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string_view>

namespace cdslab {

Event event(std::string cell, std::string value) {
  return Event{CellId{std::move(cell)}, ValueId{std::move(value)}};
}

// ---------------------------------------------------------------------------
// State

State::State(std::initializer_list<std::pair<const char*, const char*>> events) {
  for (const auto& [c, v] : events) {
    if (!insert(event(c, v)))
      throw Error(ErrorKind::NotFunctional,
                  std::string("cell ") + c + " filled twice");
  }
}

std::optional<State> State::from_events(std::span<const Event> events) {
  State x;
  for (const auto& e : events)
    if (!x.insert(e)) return std::nullopt;
  return x;
}

bool State::contains(const Event& e) const {
  auto it = map_.find(e.cell);
  return it != map_.end() && it->second == e.value;
}

std::optional<ValueId> State::value_of(const CellId& c) const {
  auto it = map_.find(c);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool State::insert(const Event& e) {
  auto [it, inserted] = map_.emplace(e.cell, e.value);
  return inserted || it->second == e.value;
}

State State::with(const Event& e) const {
  State out = *this;
  out.map_[e.cell] = e.value;
  return out;
}

State State::without(const CellId& c) const {
  State out = *this;
  out.map_.erase(c);
  return out;
}

std::vector<Event> State::events() const {
  std::vector<Event> out;
  out.reserve(map_.size());
  for (const auto& [c, v] : map_) out.push_back({c, v});
  return out;
}

bool State::subset_of(const State& other) const {
  if (size() > other.size()) return false;
  for (const auto& [c, v] : map_) {
    auto it = other.map_.find(c);
    if (it == other.map_.end() || it->second != v) return false;
  }
  return true;
}

State State::intersect(const State& other) const {
  State out;
  for (const auto& [c, v] : map_) {
    auto it = other.map_.find(c);
    if (it != other.map_.end() && it->second == v) out.map_.emplace(c, v);
  }
  return out;
}

std::optional<State> State::unite(const State& other) const {
  State out = *this;
  for (const auto& [c, v] : other.map_)
    if (!out.insert({c, v})) return std::nullopt;
  return out;
}

std::strong_ordering State::operator<=>(const State& other) const {
  if (auto cmp = size() <=> other.size(); cmp != 0) return cmp;
  return std::lexicographical_compare_three_way(
      map_.begin(), map_.end(), other.map_.begin(), other.map_.end());
}

std::string to_string(const Event& e) {
  return e.cell.name + "=" + e.value.name;
}

std::string to_string(const State& x) {
  std::string out = "{";
  bool first = true;
  for (const auto& [c, v] : x.map()) {
    if (!first) out += ",";
    first = false;
    out += c.name;
    out += "=";
    out += v.name;
  }
  out += "}";
  return out;
}

// ---------------------------------------------------------------------------
// Cds

bool Cds::has_value(const ValueId& v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

const Cds::CellInfo& Cds::info(const CellId& c) const {
  auto it = cells_.find(c);
  if (it == cells_.end())
    throw Error(ErrorKind::UnknownCell, c.name + " is not a cell of " + name_);
  return it->second;
}

bool Cds::is_initial(const CellId& c) const {
  const auto& en = enabling(c);
  return std::any_of(en.begin(), en.end(),
                     [](const Precondition& p) { return !p.has_value(); });
}

bool Cds::enabled_in(const CellId& c, const State& x) const {
  for (const auto& p : enabling(c))
    if (!p || x.contains(*p)) return true;
  return false;
}

const std::vector<CellId>& Cds::enabled_by(const Event& e) const {
  static const std::vector<CellId> none;
  auto it = enables_.find(e);
  return it == enables_.end() ? none : it->second;
}

std::vector<CellId> Cds::initial_cells() const {
  std::vector<CellId> out;
  for (const auto& c : cell_list_)
    if (is_initial(c)) out.push_back(c);
  return out;
}

bool Cds::same_structure(const Cds& other) const {
  if (cell_list_ != other.cell_list_ || values_ != other.values_ ||
      events_ != other.events_)
    return false;
  for (const auto& [c, inf] : cells_) {
    auto a = inf.enabling;
    auto b = other.cells_.at(c).enabling;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

Validated<Cds> make_cds(std::string name, std::vector<CellId> cells,
                        std::vector<ValueId> values, std::vector<Event> events,
                        std::map<CellId, std::vector<Precondition>> enabling) {
  std::vector<Diagnostic> errs;
  Cds d;
  d.name_ = std::move(name);

  std::set<CellId> cell_set;
  for (auto& c : cells) {
    if (c.name.empty())
      errs.push_back({ErrorKind::DuplicateId, "empty cell name"});
    else if (!cell_set.insert(c).second)
      errs.push_back({ErrorKind::DuplicateId, "cell " + c.name + " declared twice"});
  }
  std::set<ValueId> value_set;
  for (auto& v : values) {
    if (v.name.empty())
      errs.push_back({ErrorKind::DuplicateId, "empty value name"});
    else if (!value_set.insert(v).second)
      errs.push_back({ErrorKind::DuplicateId, "value " + v.name + " declared twice"});
    if (cell_set.count(CellId{v.name}))
      errs.push_back({ErrorKind::DuplicateId,
                      v.name + " is declared both as a cell and as a value"});
  }

  auto check_event = [&](const Event& e, std::string_view where) {
    bool ok = true;
    if (!cell_set.count(e.cell)) {
      errs.push_back({ErrorKind::UnknownCell,
                      std::string(where) + " mentions undeclared cell " + e.cell.name});
      ok = false;
    }
    if (!value_set.count(e.value)) {
      errs.push_back({ErrorKind::UnknownValue,
                      std::string(where) + " mentions undeclared value " + e.value.name});
      ok = false;
    }
    return ok;
  };

  for (const auto& e : events) {
    if (check_event(e, "event " + to_string(e))) d.events_.insert(e);
  }

  for (const auto& [c, pres] : enabling) {
    if (!cell_set.count(c)) {
      errs.push_back({ErrorKind::UnknownCell,
                      "enabling given for undeclared cell " + c.name});
      continue;
    }
    for (const auto& p : pres) {
      if (!p) continue;
      if (!check_event(*p, "precondition of " + c.name)) continue;
      if (!d.events_.count(*p))
        errs.push_back({ErrorKind::UnknownEvent, "precondition " + to_string(*p) +
                                                     " of " + c.name + " is not an event"});
    }
  }

  for (const auto& c : cell_set) {
    auto it = enabling.find(c);
    if (it == enabling.end() || it->second.empty()) {
      errs.push_back({ErrorKind::NoPrecondition, "cell " + c.name + " has no enabling"});
      continue;
    }
    auto pres = it->second;
    std::sort(pres.begin(), pres.end());
    pres.erase(std::unique(pres.begin(), pres.end()), pres.end());
    d.cells_[c].enabling = std::move(pres);
  }

  if (!errs.empty()) return errs;

  for (const auto& e : d.events_) d.cells_[e.cell].values.push_back(e.value);
  for (const auto& [c, inf] : d.cells_)
    for (const auto& p : inf.enabling)
      if (p) d.enables_[*p].push_back(c);
  d.cell_list_.assign(cell_set.begin(), cell_set.end());
  d.values_.assign(value_set.begin(), value_set.end());
  return d;
}

Cds with_arrow(Cds d, std::shared_ptr<const Arrow> arrow) {
  d.arrow_ = std::move(arrow);
  return d;
}

Cds renamed(Cds d, std::string name) {
  d.name_ = std::move(name);
  return d;
}

// ---------------------------------------------------------------------------
// States

Validated<State> check_state(const Cds& d, std::span<const Event> evs) {
  std::vector<Diagnostic> errs;
  std::set<Event> unique;
  for (const auto& e : evs) {
    if (!d.has_cell(e.cell)) {
      errs.push_back({ErrorKind::UnknownCell, e.cell.name + " is not a cell of " + d.name()});
    } else if (!d.has_event(e)) {
      errs.push_back({ErrorKind::UnknownEvent, to_string(e) + " is not an event of " + d.name()});
    } else {
      unique.insert(e);
    }
  }

  std::map<CellId, std::vector<ValueId>> by_cell;
  for (const auto& e : unique) by_cell[e.cell].push_back(e.value);
  for (const auto& [c, vs] : by_cell) {
    if (vs.size() > 1) {
      std::string list;
      for (const auto& v : vs) list += (list.empty() ? "" : ", ") + v.name;
      errs.push_back({ErrorKind::NotFunctional, "cell " + c.name + " filled with " + list});
    }
  }
  if (!errs.empty()) return errs;

  // Safety: close from the initial cells, one justified event at a time.
  State justified;
  std::vector<Event> pending(unique.begin(), unique.end());
  bool progress = true;
  while (progress && !pending.empty()) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      if (d.enabled_in(it->cell, justified)) {
        justified.insert(*it);
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  for (const auto& e : pending)
    errs.push_back({ErrorKind::NotSafe, "cell " + e.cell.name + " of " + to_string(e) +
                                            " is not justified"});
  if (!errs.empty()) return errs;
  return justified;
}

std::vector<CellId> accessible_cells(const Cds& d, const State& x) {
  std::vector<CellId> out;
  for (const auto& c : d.cells())
    if (!x.contains(c) && d.enabled_in(c, x)) out.push_back(c);
  return out;
}

Budget Budget::standard() {
  if (const char* env = std::getenv("CDSLAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return Budget{static_cast<std::size_t>(v)};
  }
  return Budget{2'000'000};
}

std::vector<State> enumerate_states(const Cds& d, Budget budget) {
  std::set<State> seen{State{}};
  std::deque<State> queue{State{}};
  while (!queue.empty()) {
    State x = std::move(queue.front());
    queue.pop_front();
    for (const auto& c : accessible_cells(d, x)) {
      for (const auto& v : d.values_of(c)) {
        State y = x.with({c, v});
        if (seen.insert(y).second) {
          if (seen.size() > budget.limit)
            throw Error(ErrorKind::BudgetExceeded,
                        "more than " + std::to_string(budget.limit) + " states in " + d.name());
          queue.push_back(std::move(y));
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Constructions

std::string product_tag(std::size_t index) { return std::to_string(index + 1) + "."; }

namespace {

CellId tagged(std::size_t i, const CellId& c) { return CellId{product_tag(i) + c.name}; }

}  // namespace

Cds product(std::span<const Cds> factors) {
  std::vector<CellId> cells;
  std::set<ValueId> values;
  std::vector<Event> events;
  std::map<CellId, std::vector<Precondition>> enabling;
  std::string name = "(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Cds& f = factors[i];
    if (i) name += " * ";
    name += f.name();
    for (const auto& c : f.cells()) {
      cells.push_back(tagged(i, c));
      auto& en = enabling[tagged(i, c)];
      for (const auto& p : f.enabling(c)) {
        if (p)
          en.push_back(Event{tagged(i, p->cell), p->value});
        else
          en.push_back(std::nullopt);
      }
    }
    values.insert(f.values().begin(), f.values().end());
    for (const auto& e : f.events()) events.push_back({tagged(i, e.cell), e.value});
  }
  name += ")";
  return make_cds(std::move(name), std::move(cells), {values.begin(), values.end()},
                  std::move(events), std::move(enabling))
      .value();
}

Cds product(const Cds& d1, const Cds& d2) {
  const Cds pair[] = {d1, d2};
  return product(pair);
}

State project(const State& z, std::size_t index) {
  const std::string tag = product_tag(index);
  State out;
  for (const auto& [c, v] : z.map())
    if (c.name.compare(0, tag.size(), tag) == 0)
      out.insert({CellId{c.name.substr(tag.size())}, v});
  return out;
}

State inject(const State& x, std::size_t index) {
  State out;
  for (const auto& [c, v] : x.map()) out.insert({tagged(index, c), v});
  return out;
}

Cds lift_err(const Cds& d) {
  if (d.has_value(kErr))
    throw Error(ErrorKind::ErrAlreadyPresent, d.name() + " already has the value err");
  std::vector<ValueId> values = d.values();
  values.push_back(kErr);
  std::vector<Event> events(d.events().begin(), d.events().end());
  std::map<CellId, std::vector<Precondition>> enabling;
  for (const auto& c : d.cells()) {
    events.push_back({c, kErr});
    enabling[c] = d.enabling(c);
  }
  return make_cds("lift(" + d.name() + ")", d.cells(), std::move(values),
                  std::move(events), std::move(enabling))
      .value();
}

}  // namespace cdslab

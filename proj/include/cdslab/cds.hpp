#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdslab/error.hpp"

namespace cdslab {

/// Name of a cell, unique within one Cds.
struct CellId {
  std::string name;

  CellId() = default;
  explicit CellId(std::string n) : name(std::move(n)) {}
  auto operator<=>(const CellId&) const = default;
};

struct ValueId {
  std::string name;

  ValueId() = default;
  explicit ValueId(std::string n) : name(std::move(n)) {}
  auto operator<=>(const ValueId&) const = default;
};

/// A cell filled with a value.
struct Event {
  CellId cell;
  ValueId value;

  auto operator<=>(const Event&) const = default;
};

Event event(std::string cell, std::string value);

/// The value reserved for errors; see lift_err().
inline const ValueId kErr{"err"};

/// An enabling entry for a cell: either the cell is initial (std::nullopt)
/// or it is enabled once the given event is present.
using Precondition = std::optional<Event>;

/// A finite functional set of events. Whether it is safe (every cell is
/// justified) depends on a Cds and is established by check_state().
///
/// States are ordered first by size, then lexicographically on their sorted
/// event lists; this is the canonical order used by every enumeration.
class State {
 public:
  State() = default;
  State(std::initializer_list<std::pair<const char*, const char*>> events);

  /// Builds a state from events; returns nullopt when two events share a cell
  /// with different values.
  static std::optional<State> from_events(std::span<const Event> events);

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  bool contains(const CellId& c) const { return map_.count(c) != 0; }
  bool contains(const Event& e) const;
  std::optional<ValueId> value_of(const CellId& c) const;

  /// Adds an event; returns false (and leaves the state unchanged) when the
  /// cell is already filled with a different value.
  bool insert(const Event& e);
  void erase(const CellId& c) { map_.erase(c); }
  State with(const Event& e) const;
  State without(const CellId& c) const;

  std::vector<Event> events() const;
  const std::map<CellId, ValueId>& map() const { return map_; }

  bool subset_of(const State& other) const;
  State intersect(const State& other) const;
  /// Union of two states, or nullopt when they disagree on a cell.
  std::optional<State> unite(const State& other) const;

  std::strong_ordering operator<=>(const State& other) const;
  bool operator==(const State& other) const { return map_ == other.map_; }

 private:
  std::map<CellId, ValueId> map_;
};

/// Canonical text form: {a=tt,b=ff}, events sorted by cell name.
std::string to_string(const State& x);
std::string to_string(const Event& e);

struct Arrow;

/// A finite concrete data structure: cells, values, the events allowed
/// between them, and for each cell the alternatives that enable it.
class Cds {
 public:
  struct CellInfo {
    std::vector<Precondition> enabling;
    std::vector<ValueId> values;  // values v with (c, v) an event, sorted
  };

  Cds() = default;

  const std::string& name() const { return name_; }
  const std::vector<CellId>& cells() const { return cell_list_; }
  const std::vector<ValueId>& values() const { return values_; }
  const std::set<Event>& events() const { return events_; }

  bool has_cell(const CellId& c) const { return cells_.count(c) != 0; }
  bool has_value(const ValueId& v) const;
  bool has_event(const Event& e) const { return events_.count(e) != 0; }

  /// Throws UnknownCell for undeclared cells.
  const CellInfo& info(const CellId& c) const;
  const std::vector<Precondition>& enabling(const CellId& c) const {
    return info(c).enabling;
  }
  const std::vector<ValueId>& values_of(const CellId& c) const {
    return info(c).values;
  }
  bool is_initial(const CellId& c) const;
  /// True when c has an INITIAL precondition or one whose event lies in x.
  bool enabled_in(const CellId& c, const State& x) const;
  /// Cells having e among their preconditions.
  const std::vector<CellId>& enabled_by(const Event& e) const;
  /// Cells with an INITIAL precondition.
  std::vector<CellId> initial_cells() const;

  /// Set for exponentials (function spaces); null otherwise.
  const Arrow* arrow() const { return arrow_.get(); }

  /// Structural equality; the name is not compared.
  bool same_structure(const Cds& other) const;

 private:
  friend Validated<Cds> make_cds(std::string, std::vector<CellId>,
                                 std::vector<ValueId>, std::vector<Event>,
                                 std::map<CellId, std::vector<Precondition>>);
  friend Cds with_arrow(Cds d, std::shared_ptr<const Arrow> arrow);
  friend Cds renamed(Cds d, std::string name);

  std::string name_;
  std::map<CellId, CellInfo> cells_;
  std::vector<CellId> cell_list_;
  std::vector<ValueId> values_;
  std::set<Event> events_;
  std::map<Event, std::vector<CellId>> enables_;
  std::shared_ptr<const Arrow> arrow_;
};

using CdsPtr = std::shared_ptr<const Cds>;

/// Validates and builds a Cds. Every violated invariant is reported.
Validated<Cds> make_cds(std::string name, std::vector<CellId> cells,
                        std::vector<ValueId> values, std::vector<Event> events,
                        std::map<CellId, std::vector<Precondition>> enabling);

Cds with_arrow(Cds d, std::shared_ptr<const Arrow> arrow);
Cds renamed(Cds d, std::string name);

/// Accepts evs when it is functional and safe in d.
Validated<State> check_state(const Cds& d, std::span<const Event> evs);
inline Validated<State> check_state(const Cds& d, const State& x) {
  auto evs = x.events();
  return check_state(d, evs);
}

/// Unfilled cells of x that are enabled by x.
std::vector<CellId> accessible_cells(const Cds& d, const State& x);

/// Upper bound on the number of states (or search nodes) an enumeration may
/// visit before giving up with BudgetExceeded.
struct Budget {
  std::size_t limit;

  /// The CDSLAB_BUDGET environment variable when set, else 2'000'000.
  static Budget standard();
};

/// All states of d, in canonical order (size, then lexicographic).
std::vector<State> enumerate_states(const Cds& d,
                                    Budget budget = Budget::standard());

/// The tag prefix used for the i-th factor of a product, counting from 0.
std::string product_tag(std::size_t index);

/// n-ary product with cells tagged "1.", "2.", ...; values are shared.
Cds product(std::span<const Cds> factors);
Cds product(const Cds& d1, const Cds& d2);

/// Events of z whose cell carries the tag of factor `index`, untagged.
State project(const State& z, std::size_t index);
/// Tags every event of x with the tag of factor `index`.
State inject(const State& x, std::size_t index);

/// Adds the value err and an (c, err) event for every cell. Enabling is
/// unchanged. The result is a plain Cds even when d is an exponential.
Cds lift_err(const Cds& d);

}  // namespace cdslab

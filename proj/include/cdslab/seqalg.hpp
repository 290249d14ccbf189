#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdslab/cds.hpp"

namespace cdslab {

/// A cell <x |- c'> of an exponential: the question "at input x, what about
/// output cell c'?".
struct FunCell {
  State input;
  CellId output;

  auto operator<=>(const FunCell&) const = default;
  bool operator==(const FunCell&) const = default;
};

/// A value of an exponential: either a query of an input cell or an output.
class FunValue {
 public:
  enum class Kind { Valof, Output };

  static FunValue valof(CellId c) { return FunValue(Kind::Valof, std::move(c.name)); }
  static FunValue output(ValueId v) { return FunValue(Kind::Output, std::move(v.name)); }

  Kind kind() const { return kind_; }
  bool is_valof() const { return kind_ == Kind::Valof; }
  bool is_output() const { return kind_ == Kind::Output; }
  CellId cell() const { return CellId{name_}; }
  ValueId value() const { return ValueId{name_}; }

  auto operator<=>(const FunValue&) const = default;

 private:
  FunValue(Kind k, std::string n) : kind_(k), name_(std::move(n)) {}
  Kind kind_;
  std::string name_;
};

/// Canonical text: <{a=tt,b=tt}|-out>.
std::string to_string(const FunCell& c);
/// Canonical text: "valof c" or "output v".
std::string to_string(const FunValue& v);
inline CellId cell_id(const FunCell& c) { return CellId{to_string(c)}; }
inline ValueId value_id(const FunValue& v) { return ValueId{to_string(v)}; }

using FunEvent = std::pair<FunCell, FunValue>;

/// Decoding tables attached to an exponential Cds.
struct Arrow {
  CdsPtr from;
  CdsPtr to;
  std::map<CellId, FunCell> cells;
  std::map<ValueId, FunValue> values;

  const FunCell& decode(const CellId& c) const;
  const FunValue& decode(const ValueId& v) const;
};

/// The function-space Cds from M to N. Its cells are <x |- c'> for every
/// state x of M and cell c' of N.
CdsPtr exponential(CdsPtr from, CdsPtr to, Budget budget = Budget::standard());

/// A sequential algorithm: a state of an exponential Cds.
class SeqAlg {
 public:
  SeqAlg(CdsPtr space, State state);

  const CdsPtr& space() const { return space_; }
  const Cds& from() const { return *space_->arrow()->from; }
  const Cds& to() const { return *space_->arrow()->to; }
  const CdsPtr& from_ptr() const { return space_->arrow()->from; }
  const CdsPtr& to_ptr() const { return space_->arrow()->to; }

  /// The algorithm as a state of its exponential.
  const State& state() const { return state_; }
  const std::map<FunCell, FunValue>& moves() const { return moves_; }
  bool empty() const { return moves_.empty(); }
  std::size_t size() const { return moves_.size(); }

  /// The move at <y |- c'>, if any.
  std::optional<FunValue> move_at(const State& y, const CellId& c) const;

  /// Equal event sets over structurally equal exponentials.
  bool operator==(const SeqAlg& other) const;

 private:
  CdsPtr space_;
  State state_;
  std::map<FunCell, FunValue> moves_;
};

/// Accepts moves when they form a functional, safe state of `space`.
Validated<SeqAlg> validate_algorithm(const CdsPtr& space, std::span<const FunEvent> moves);
Validated<SeqAlg> validate_algorithm(CdsPtr from, CdsPtr to, std::span<const FunEvent> moves);

/// Every algorithm of the exponential, in canonical state order.
std::vector<SeqAlg> enumerate_algorithms(const CdsPtr& space,
                                         Budget budget = Budget::standard());

/// Builds the algorithm grown from the initial cells of `space` by asking
/// `decide` for the move at each enabled cell; cells for which `decide`
/// returns nullopt stay empty.
SeqAlg grow_algorithm(const CdsPtr& space,
                      const std::function<std::optional<FunValue>(const FunCell&)>& decide);

/// The copycat algorithm on M: each output cell is answered by querying the
/// same input cell and echoing its value.
SeqAlg identity_algorithm(const CdsPtr& m);

/// The algorithm from the empty Cds that outputs x.
SeqAlg constant_algorithm(const CdsPtr& m, const State& x);

/// Cds with no cells.
CdsPtr empty_cds();

}  // namespace cdslab

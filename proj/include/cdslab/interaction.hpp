#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdslab/seqalg.hpp"

namespace cdslab {

/// What an argument says when one of its cells is queried.
struct Answer {
  enum class Kind { Value, Err, NoAnswer, Deferred };
  Kind kind;
  ValueId value;

  static Answer of(ValueId v) { return {Kind::Value, std::move(v)}; }
  static Answer err() { return {Kind::Err, kErr}; }
  static Answer none() { return {Kind::NoAnswer, {}}; }
  static Answer deferred() { return {Kind::Deferred, {}}; }
};

/// The argument side of a dialogue. Within one dialogue repeated queries of
/// the same cell must get the same answer.
class ArgumentProcess {
 public:
  virtual ~ArgumentProcess() = default;
  virtual Answer answer(const CellId& c) = 0;
};

/// Answers from a fixed datum; a cell holding err answers Err.
class StaticState final : public ArgumentProcess {
 public:
  explicit StaticState(State x) : x_(std::move(x)) {}
  Answer answer(const CellId& c) override;
  const State& state() const { return x_; }

 private:
  State x_;
};

/// Answers from the event set of an algorithm, i.e. the argument is itself an
/// algorithm and its cells are function cells.
class AlgorithmArg final : public ArgumentProcess {
 public:
  explicit AlgorithmArg(SeqAlg s) : s_(std::move(s)) {}
  Answer answer(const CellId& c) override;

 private:
  SeqAlg s_;
};

/// Leaves every query to an outside party; see Session::answer().
class InteractiveOracle final : public ArgumentProcess {
 public:
  Answer answer(const CellId&) override { return Answer::deferred(); }
};

enum class Polarity { Player, Opponent };

struct Move {
  enum class Kind { Request, Valof, Answer, Output };
  Kind kind;
  std::string name;

  Polarity polarity() const {
    return kind == Kind::Valof || kind == Kind::Output ? Polarity::Player : Polarity::Opponent;
  }
  bool operator==(const Move&) const = default;
};

struct Outcome {
  enum class Kind { Value, Err, Stuck };
  Kind kind = Kind::Stuck;
  ValueId value;

  static Outcome of(ValueId v) { return {Kind::Value, std::move(v)}; }
  static Outcome err() { return {Kind::Err, {}}; }
  static Outcome stuck() { return {Kind::Stuck, {}}; }
  bool operator==(const Outcome&) const = default;
};

/// "value:v", "err" or "stuck".
std::string to_string(const Outcome& o);

/// One dialogue: the request, the alternating moves after it, the outcome.
struct Trace {
  CellId request;
  std::vector<Move> moves;
  Outcome outcome;
  /// Internal table after each answered query; only printed in verbose mode.
  std::vector<State> tables;
  /// True while the dialogue waits for an answer to its last Valof.
  bool open = false;

  bool operator==(const Trace&) const = default;
};

/// Line-oriented text: REQ c', VALOF c, ANS v, OUT v', then RESULT unless the
/// dialogue is still open. Verbose mode adds a TABLE line after each answer.
std::string to_text(const Trace& t, bool verbose = false);

/// Lines of to_text() without the trailing newlines.
std::vector<std::string> trace_lines(const Trace& t, bool verbose = false);

/// An algorithm applied to an argument, answering requests one at a time.
/// The internal table persists across requests until reset().
class Session {
 public:
  enum class Status { Done, AwaitingAnswer };

  Session(SeqAlg f, std::shared_ptr<ArgumentProcess> arg);

  /// Starts a dialogue for output cell c'. Throws RequestUnknownCell, and
  /// WrongPhase while another dialogue awaits an answer.
  Status request(const CellId& c);
  /// Supplies the answer for the pending Valof. Throws WrongPhase when nothing
  /// is pending and IllTypedAnswer when (c, v) is not an event.
  Status answer(const Answer& a);
  void reset();

  const SeqAlg& algorithm() const { return f_; }
  const State& table() const { return table_; }
  /// The current or most recent dialogue.
  const Trace& trace() const { return trace_; }
  std::optional<CellId> pending() const { return pending_; }
  bool awaiting() const { return pending_.has_value(); }

 private:
  Status run();
  /// Records an answer to the pending query; returns false when it ends the
  /// dialogue.
  bool accept(const CellId& c, const Answer& a);

  SeqAlg f_;
  std::shared_ptr<ArgumentProcess> arg_;
  State table_;
  State cursor_;
  Trace trace_;
  std::optional<CellId> pending_;
};

/// One dialogue from an empty internal table.
Trace apply(const SeqAlg& f, ArgumentProcess& arg, const CellId& c);

/// A finite function given by its graph over all states of `from`.
struct FunTable {
  CdsPtr from;
  CdsPtr to;
  std::map<State, State> rows;

  const State& operator()(const State& x) const;
  bool operator==(const FunTable& other) const { return rows == other.rows; }
};

/// The input/output function computed by f on all err-free states of its
/// input Cds.
FunTable fun_of(const SeqAlg& f, Budget budget = Budget::standard());

/// The output state f computes on x.
State run_on(const SeqAlg& f, const State& x);

/// Demand-driven composition: g after f.
SeqAlg compose(const SeqAlg& f, const SeqAlg& g);

}  // namespace cdslab

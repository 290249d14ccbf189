#include "cdslab/interaction.hpp"

namespace cdslab {

Answer StaticState::answer(const CellId& c) {
  auto v = x_.value_of(c);
  if (!v) return Answer::none();
  if (*v == kErr) return Answer::err();
  return Answer::of(*v);
}

Answer AlgorithmArg::answer(const CellId& c) {
  auto v = s_.state().value_of(c);
  if (!v) return Answer::none();
  return Answer::of(*v);
}

std::string to_string(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Value: return "value:" + o.value.name;
    case Outcome::Kind::Err: return "err";
    case Outcome::Kind::Stuck: return "stuck";
  }
  return "stuck";
}

std::vector<std::string> trace_lines(const Trace& t, bool verbose) {
  std::vector<std::string> out;
  out.push_back("REQ " + t.request.name);
  std::size_t answered = 0;
  for (const auto& m : t.moves) {
    switch (m.kind) {
      case Move::Kind::Request: out.push_back("REQ " + m.name); break;
      case Move::Kind::Valof: out.push_back("VALOF " + m.name); break;
      case Move::Kind::Answer:
        out.push_back("ANS " + m.name);
        if (verbose && answered < t.tables.size())
          out.push_back("TABLE " + to_string(t.tables[answered]));
        ++answered;
        break;
      case Move::Kind::Output: out.push_back("OUT " + m.name); break;
    }
  }
  if (!t.open) out.push_back("RESULT " + to_string(t.outcome));
  return out;
}

std::string to_text(const Trace& t, bool verbose) {
  std::string out;
  for (const auto& line : trace_lines(t, verbose)) {
    out += line;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

Session::Session(SeqAlg f, std::shared_ptr<ArgumentProcess> arg)
    : f_(std::move(f)), arg_(std::move(arg)) {}

Session::Status Session::request(const CellId& c) {
  if (pending_)
    throw Error(ErrorKind::WrongPhase, "a dialogue is waiting for the value of " + pending_->name);
  if (!f_.to().has_cell(c))
    throw Error(ErrorKind::RequestUnknownCell, c.name + " is not a cell of " + f_.to().name());
  trace_ = Trace{c, {}, Outcome::stuck(), {}, false};
  cursor_ = State{};
  return run();
}

Session::Status Session::answer(const Answer& a) {
  if (!pending_) throw Error(ErrorKind::WrongPhase, "no query is waiting for an answer");
  const CellId c = *pending_;
  if (a.kind == Answer::Kind::Value && a.value != kErr && !f_.from().has_event({c, a.value}))
    throw Error(ErrorKind::IllTypedAnswer, a.value.name + " is not a value of " + c.name);
  if (a.kind == Answer::Kind::Deferred) return Status::AwaitingAnswer;
  pending_.reset();
  Answer normalized = a;
  if (a.kind == Answer::Kind::Value && a.value == kErr) normalized = Answer::err();
  if (!accept(c, normalized)) return Status::Done;
  return run();
}

void Session::reset() {
  table_ = State{};
  cursor_ = State{};
  trace_ = Trace{};
  pending_.reset();
}

bool Session::accept(const CellId& c, const Answer& a) {
  switch (a.kind) {
    case Answer::Kind::Err:
      trace_.moves.push_back({Move::Kind::Answer, kErr.name});
      trace_.outcome = Outcome::err();
      trace_.open = false;
      return false;
    case Answer::Kind::NoAnswer:
    case Answer::Kind::Deferred:
      trace_.outcome = Outcome::stuck();
      trace_.open = false;
      return false;
    case Answer::Kind::Value:
      if (!f_.from().has_event({c, a.value}))
        throw Error(ErrorKind::ArgumentAnswerIllTyped,
                    to_string(Event{c, a.value}) + " is not an event of " + f_.from().name());
      trace_.moves.push_back({Move::Kind::Answer, a.value.name});
      cursor_.insert({c, a.value});
      table_.insert({c, a.value});
      trace_.tables.push_back(cursor_);
      return true;
  }
  return false;
}

Session::Status Session::run() {
  const CellId request = trace_.request;
  for (;;) {
    auto mv = f_.move_at(cursor_, request);
    if (!mv) {
      trace_.outcome = Outcome::stuck();
      trace_.open = false;
      return Status::Done;
    }
    if (mv->is_output()) {
      trace_.moves.push_back({Move::Kind::Output, mv->value().name});
      trace_.outcome = Outcome::of(mv->value());
      trace_.open = false;
      return Status::Done;
    }
    const CellId c = mv->cell();
    if (auto known = table_.value_of(c)) {
      // Read earlier in this session: no need to consult the argument.
      cursor_.insert({c, *known});
      continue;
    }
    trace_.moves.push_back({Move::Kind::Valof, c.name});
    Answer a = arg_->answer(c);
    if (a.kind == Answer::Kind::Deferred) {
      pending_ = c;
      trace_.open = true;
      return Status::AwaitingAnswer;
    }
    if (!accept(c, a)) return Status::Done;
  }
}

Trace apply(const SeqAlg& f, ArgumentProcess& arg, const CellId& c) {
  std::shared_ptr<ArgumentProcess> borrowed(std::shared_ptr<ArgumentProcess>{}, &arg);
  Session s(f, borrowed);
  s.request(c);
  Trace t = s.trace();
  if (t.open) {
    // Nobody can answer outside a session.
    t.open = false;
    t.outcome = Outcome::stuck();
  }
  return t;
}

// ---------------------------------------------------------------------------

const State& FunTable::operator()(const State& x) const {
  auto it = rows.find(x);
  if (it == rows.end()) throw Error(ErrorKind::InvalidTable, "no row for " + to_string(x));
  return it->second;
}

State run_on(const SeqAlg& f, const State& x) {
  const Cds& n = f.to();
  StaticState arg(x);
  State out;
  std::set<CellId> tried;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& c : accessible_cells(n, out)) {
      if (!tried.insert(c).second) continue;
      Trace t = apply(f, arg, c);
      if (t.outcome.kind == Outcome::Kind::Value) {
        out.insert({c, t.outcome.value});
        grew = true;
      }
    }
  }
  return out;
}

FunTable fun_of(const SeqAlg& f, Budget budget) {
  FunTable t{f.from_ptr(), f.to_ptr(), {}};
  for (const auto& x : enumerate_states(f.from(), budget)) t.rows.emplace(x, run_on(f, x));
  return t;
}

namespace {

/// Plays f on a fixed input and remembers the first input cell f needed that
/// the input does not fill.
class NeedTracker final : public ArgumentProcess {
 public:
  NeedTracker(const SeqAlg& f, const State& x) : f_(f), x_(x) {}

  Answer answer(const CellId& c) override {
    if (needed_) return Answer::none();
    Probe probe(x_, needed_);
    Trace t = apply(f_, probe, c);
    if (t.outcome.kind == Outcome::Kind::Value) return Answer::of(t.outcome.value);
    return Answer::none();
  }

  const std::optional<CellId>& needed() const { return needed_; }

 private:
  class Probe final : public ArgumentProcess {
   public:
    Probe(const State& x, std::optional<CellId>& needed) : x_(x), needed_(needed) {}
    Answer answer(const CellId& c) override {
      if (auto v = x_.value_of(c)) return Answer::of(*v);
      if (!needed_) needed_ = c;
      return Answer::none();
    }

   private:
    const State& x_;
    std::optional<CellId>& needed_;
  };

  const SeqAlg& f_;
  const State& x_;
  std::optional<CellId> needed_;
};

}  // namespace

SeqAlg compose(const SeqAlg& f, const SeqAlg& g) {
  if (!f.to().same_structure(g.from()))
    throw Error(ErrorKind::MiddleMismatch,
                "cannot compose " + f.to().name() + " with " + g.from().name());
  auto space = exponential(f.from_ptr(), g.to_ptr());
  return grow_algorithm(space, [&](const FunCell& fc) -> std::optional<FunValue> {
    NeedTracker arg(f, fc.input);
    Trace t = apply(g, arg, fc.output);
    if (t.outcome.kind == Outcome::Kind::Value) return FunValue::output(t.outcome.value);
    if (arg.needed()) return FunValue::valof(*arg.needed());
    return std::nullopt;
  });
}

}  // namespace cdslab

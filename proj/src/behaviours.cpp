#include "cdslab/behaviours.hpp"

#include <algorithm>

namespace cdslab {

namespace {

const CellId kAns{"ans"};
const ValueId kOk{"ok"};

}  // namespace

CdsPtr observation_cds() {
  static const CdsPtr o = std::make_shared<const Cds>(
      make_cds("O", {kAns}, {kOk, kErr}, {{kAns, kOk}, {kAns, kErr}}, {{kAns, {std::nullopt}}})
          .value());
  return o;
}

Taster::Taster(SeqAlg alg) : alg_(std::move(alg)) {
  if (!alg_.from().arrow())
    throw Error(ErrorKind::TypeMismatch,
                "a taster reads algorithms, but its input " + alg_.from().name() +
                    " is not a function space");
  if (!alg_.to().same_structure(*observation_cds()))
    throw Error(ErrorKind::TypeMismatch,
                "a taster answers on O, not on " + alg_.to().name());
}

OrthoResult orthogonal(const Taster& t, const SeqAlg& s) {
  if (!s.space()->same_structure(*t.candidate_type()))
    throw Error(ErrorKind::TypeMismatch, "candidate of type " + s.space()->name() +
                                             " given to a taster of " +
                                             t.candidate_type()->name());
  AlgorithmArg arg(s);
  OrthoResult r;
  r.trace = apply(t.algorithm(), arg, kAns);
  r.orthogonal = r.trace.outcome == Outcome::of(kErr);
  return r;
}

Behaviour::Behaviour(CdsPtr candidate_type, std::vector<Taster> tests)
    : type_(std::move(candidate_type)) {
  for (auto& t : tests) add(std::move(t));
}

void Behaviour::add(Taster t) {
  if (!t.candidate_type()->same_structure(*type_))
    throw Error(ErrorKind::TypeMismatch, "taster of " + t.candidate_type()->name() +
                                             " added to a behaviour of " + type_->name());
  if (!contains_test(t)) tests_.push_back(std::move(t));
}

bool Behaviour::contains_test(const Taster& t) const {
  return std::find(tests_.begin(), tests_.end(), t) != tests_.end();
}

bool member(const Behaviour& b, const SeqAlg& s) {
  if (!s.space()->same_structure(*b.candidate_type()))
    throw Error(ErrorKind::TypeMismatch, "candidate of type " + s.space()->name() +
                                             " tested against " + b.candidate_type()->name());
  return std::all_of(b.tests().begin(), b.tests().end(),
                     [&](const Taster& t) { return orthogonal(t, s).orthogonal; });
}

std::vector<SeqAlg> member_set(const Behaviour& b, const std::vector<SeqAlg>& candidates) {
  std::vector<SeqAlg> out;
  for (const auto& s : candidates)
    if (member(b, s)) out.push_back(s);
  return out;
}

Behaviour intersection(const Behaviour& x, const Behaviour& y) {
  Behaviour out = x;
  for (const auto& t : y.tests()) out.add(t);
  return out;
}

SubtypeVerdict subtype(const Behaviour& sub, const Behaviour& super, bool semantic,
                       Budget budget) {
  if (!sub.candidate_type()->same_structure(*super.candidate_type()))
    throw Error(ErrorKind::TypeMismatch, "behaviours over " + sub.candidate_type()->name() +
                                             " and " + super.candidate_type()->name());
  SubtypeVerdict v;
  v.syntactic = std::all_of(super.tests().begin(), super.tests().end(),
                            [&](const Taster& t) { return sub.contains_test(t); });
  if (semantic) {
    bool included = true;
    for (const auto& s : enumerate_algorithms(sub.candidate_type(), budget)) {
      if (member(sub, s) && !member(super, s)) {
        included = false;
        break;
      }
    }
    v.semantic = included;
  }
  return v;
}

Taster neededness_taster(const CdsPtr& candidate_type, const CellId& out, const CellId& needed) {
  const Arrow* arrow = candidate_type->arrow();
  if (!arrow) throw Error(ErrorKind::TypeMismatch, candidate_type->name() + " is not a function space");
  if (!arrow->to->has_cell(out))
    throw Error(ErrorKind::UnknownCell, out.name + " is not an output cell of " + candidate_type->name());
  if (!arrow->from->has_cell(needed))
    throw Error(ErrorKind::UnknownCell, needed.name + " is not an input cell of " + candidate_type->name());

  const CellId first_move = cell_id(FunCell{State{}, out});
  const Event observed{first_move, value_id(FunValue::valof(needed))};
  auto space = exponential(candidate_type, observation_cds());
  return Taster(grow_algorithm(space, [&](const FunCell& fc) -> std::optional<FunValue> {
    if (fc.input.empty()) return FunValue::valof(first_move);
    if (fc.input.size() == 1 && fc.input.contains(observed)) return FunValue::output(kErr);
    return std::nullopt;
  }));
}

CdsPtr record_type(const CdsPtr& record) { return exponential(empty_cds(), record); }

Taster presence_taster(const CdsPtr& record, const CellId& field) {
  if (!record->has_cell(field))
    throw Error(ErrorKind::UnknownField, field.name + " is not a field of " + record->name());
  const CellId probe = cell_id(FunCell{State{}, field});
  auto space = exponential(record_type(record), observation_cds());
  return Taster(grow_algorithm(space, [&](const FunCell& fc) -> std::optional<FunValue> {
    if (fc.input.empty()) return FunValue::valof(probe);
    if (fc.input.size() == 1 && fc.input.contains(probe)) return FunValue::output(kErr);
    return std::nullopt;
  }));
}

}  // namespace cdslab

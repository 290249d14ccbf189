#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdslab/interaction.hpp"

namespace cdslab {

/// The observation Cds: one cell `ans` with values ok and err.
CdsPtr observation_cds();

/// A test algorithm. It reads a candidate algorithm (its input Cds is the
/// candidate's exponential) and answers on the observation Cds.
class Taster {
 public:
  /// Throws TypeMismatch unless alg maps an exponential to the observation Cds.
  explicit Taster(SeqAlg alg);

  const SeqAlg& algorithm() const { return alg_; }
  /// The exponential the candidates live in.
  const CdsPtr& candidate_type() const { return alg_.from_ptr(); }

  bool operator==(const Taster& other) const { return alg_ == other.alg_; }

 private:
  SeqAlg alg_;
};

struct OrthoResult {
  bool orthogonal = false;
  Trace trace;
};

/// Runs the taster against the candidate; orthogonal iff it outputs err.
OrthoResult orthogonal(const Taster& t, const SeqAlg& s);

/// A type given by a finite set of tests: its members are the candidates
/// orthogonal to every test.
class Behaviour {
 public:
  explicit Behaviour(CdsPtr candidate_type) : type_(std::move(candidate_type)) {}
  Behaviour(CdsPtr candidate_type, std::vector<Taster> tests);

  const CdsPtr& candidate_type() const { return type_; }
  const std::vector<Taster>& tests() const { return tests_; }

  /// Throws TypeMismatch when the taster reads another type.
  void add(Taster t);
  bool contains_test(const Taster& t) const;

 private:
  CdsPtr type_;
  std::vector<Taster> tests_;
};

bool member(const Behaviour& b, const SeqAlg& s);

/// Members of b among the given candidates, in the given order.
std::vector<SeqAlg> member_set(const Behaviour& b, const std::vector<SeqAlg>& candidates);

/// The behaviour tested by the union of both test sets.
Behaviour intersection(const Behaviour& x, const Behaviour& y);

struct SubtypeVerdict {
  /// Every test of the supertype is a test of the subtype.
  bool syntactic = false;
  /// Member-set inclusion over all candidates; only computed on request.
  std::optional<bool> semantic;
};

SubtypeVerdict subtype(const Behaviour& sub, const Behaviour& super, bool semantic = false,
                       Budget budget = Budget::standard());

/// Tests whether a candidate's first move at output cell `out` (on empty
/// input) is a query of `needed`.
Taster neededness_taster(const CdsPtr& candidate_type, const CellId& out, const CellId& needed);

/// Tests whether a record, seen as a constant algorithm from the empty Cds,
/// fills `field`. Throws UnknownField.
Taster presence_taster(const CdsPtr& record, const CellId& field);

/// The candidate type for records: constant algorithms into `record`.
CdsPtr record_type(const CdsPtr& record);

}  // namespace cdslab

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cdslab/interaction.hpp"

namespace cdslab {

/// Checks that t has a row for every state of its input Cds and that every
/// image is a state of its output Cds.
std::vector<Diagnostic> check_table(const FunTable& t, Budget budget = Budget::standard());

/// Builds a table from characteristic rows: each state maps to the union of
/// the outputs of the rows below it. Throws InvalidTable when two applicable
/// rows disagree.
FunTable upward_closure(CdsPtr from, CdsPtr to,
                        const std::vector<std::pair<State, State>>& rows,
                        Budget budget = Budget::standard());

struct MonotoneVerdict {
  bool monotone = true;
  /// x below y with t(x) not below t(y).
  std::optional<std::pair<State, State>> counterexample;
};

MonotoneVerdict is_monotone(const FunTable& t);

struct StableVerdict {
  bool stable = true;
  /// Compatible x, y with t(x ∩ y) != t(x) ∩ t(y).
  std::optional<std::pair<State, State>> counterexample;
  /// Compatible pairs whose intersection is not a state; these are skipped.
  std::vector<std::pair<State, State>> skipped;
};

/// Throws NotMonotone when t is not monotone.
StableVerdict is_stable(const FunTable& t);

/// Every algorithm f with fun_of(f) == t, found by exhaustive search. An
/// empty result certifies that no sequential algorithm computes t.
/// The budget bounds the number of search nodes.
std::vector<SeqAlg> sequential_realizers(const FunTable& t, Budget budget = Budget::standard());

struct Classification {
  bool monotone = false;
  bool stable = false;
  std::vector<SeqAlg> realizers;
  MonotoneVerdict monotone_verdict;
  std::optional<StableVerdict> stable_verdict;

  bool sequential() const { return !realizers.empty(); }
};

Classification classify(const FunTable& t, Budget budget = Budget::standard());

}  // namespace cdslab

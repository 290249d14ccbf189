#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cdslab/analysis.hpp"
#include "cdslab/behaviours.hpp"

namespace cdslab {

struct TableEntry {
  FunTable table;
  /// Free text shown with classification reports.
  std::string note;

  bool operator==(const TableEntry& o) const;
};

struct BehaviourEntry {
  Behaviour behaviour;
  /// Names of the taster algorithms, in declaration order.
  std::vector<std::string> tests;

  bool operator==(const BehaviourEntry& o) const;
};

/// Named definitions, one namespace per kind. The Cds `unit` and `O` are
/// always present.
class Workspace {
 public:
  Workspace();

  const std::map<std::string, CdsPtr>& cds() const { return cds_; }
  const std::map<std::string, SeqAlg>& algs() const { return algs_; }
  const std::map<std::string, TableEntry>& tables() const { return tables_; }
  const std::map<std::string, BehaviourEntry>& behaviours() const { return behaviours_; }

  /// Throw UnknownName.
  const CdsPtr& get_cds(const std::string& name) const;
  const SeqAlg& get_alg(const std::string& name) const;
  const TableEntry& get_table(const std::string& name) const;
  const BehaviourEntry& get_behaviour(const std::string& name) const;

  /// Throw DuplicateId when the name is taken within its kind.
  void add_cds(const std::string& name, CdsPtr d);
  void add_alg(const std::string& name, SeqAlg f);
  void add_table(const std::string& name, TableEntry t);
  void add_behaviour(const std::string& name, BehaviourEntry b);

  /// Adds every non-builtin entry of delta; nothing is added on DuplicateId.
  void merge(const Workspace& delta);

  bool is_builtin(const std::string& cds_name) const;
  /// Names of all non-builtin entries, sorted within each kind.
  std::vector<std::string> names() const;

  /// Interned product and function-space types, keyed by their printed form.
  CdsPtr intern_type(const std::string& key, const std::function<CdsPtr()>& build) const;

  bool operator==(const Workspace& o) const;

 private:
  std::map<std::string, CdsPtr> cds_;
  std::map<std::string, SeqAlg> algs_;
  std::map<std::string, TableEntry> tables_;
  std::map<std::string, BehaviourEntry> behaviours_;
  mutable std::map<std::string, CdsPtr> types_;
};

/// The standard fixtures as a workspace: flat booleans, A, A', not, the por,
/// BK and and tables, the strategies of (o * o) -> o, the neededness taster
/// T2 and the record presence tasters with their behaviours.
const Workspace& fixtures_workspace();

}  // namespace cdslab

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cdslab/workspace.hpp"

namespace cdslab {

/// type := prod ('->' type)? ; prod := atom ('*' atom)* ; atom := NAME | '(' type ')'
struct TypeExpr {
  enum class Kind { Name, Product, Arrow };
  Kind kind = Kind::Name;
  std::string name;
  /// Factors of a product, or source and target of an arrow.
  std::vector<TypeExpr> parts;
};

/// Fully parenthesised form, e.g. "(B2 -> B)"; equals the name of the Cds
/// the expression denotes.
std::string to_string(const TypeExpr& t);

struct ParseResult {
  /// The new definitions; empty when errors is non-empty.
  Workspace delta;
  std::vector<Diagnostic> errors;

  bool ok() const { return errors.empty(); }
};

/// Parses a definition file against the names already in `context`.
/// Never throws on malformed input.
ParseResult parse_definitions(std::string_view text, const Workspace& context);

/// Reads and parses a file; an unreadable file is reported as UnknownName.
ParseResult parse_file(const std::string& path, const Workspace& context);

/// Parses and resolves a type expression such as "Sin * Sin -> Sout".
Validated<CdsPtr> parse_type(std::string_view text, const Workspace& context);

/// Parses a state literal "{c=v, ...}" and checks it against d.
Validated<State> parse_state(std::string_view text, const Cds& d);

/// Prints the non-builtin entries of ws in a form parse_definitions accepts.
std::string print_definitions(const Workspace& ws);

/// The type of d as written in definitions: its name without outer parentheses.
std::string type_text(const Cds& d);
/// The type from -> to as written in definitions.
std::string arrow_text(const Cds& from, const Cds& to);

}  // namespace cdslab

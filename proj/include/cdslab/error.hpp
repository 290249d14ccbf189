#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdslab {

enum class ErrorKind {
  UnknownCell,
  UnknownValue,
  UnknownEvent,
  NoPrecondition,
  DuplicateId,
  NotFunctional,
  NotSafe,
  ErrAlreadyPresent,
  ValofFilledCell,
  BudgetExceeded,
  RequestUnknownCell,
  ArgumentAnswerIllTyped,
  MiddleMismatch,
  NotMonotone,
  TypeMismatch,
  UnknownField,
  InvalidTable,
  SyntaxError,
  ValidationError,
  UnknownName,
  WrongPhase,
  IllTypedAnswer,
};

std::string_view to_string(ErrorKind kind);

struct Diagnostic {
  ErrorKind kind;
  std::string message;
  // Source position, 1-based; zero when the diagnostic has no location.
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string format(const Diagnostic& d);

class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic d);
  explicit Error(std::vector<Diagnostic> ds);
  Error(ErrorKind kind, std::string message)
      : Error(Diagnostic{kind, std::move(message)}) {}

  ErrorKind kind() const { return diagnostics_.front().kind; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Either a validated value or the full list of violations found while
/// validating it.
template <class T>
class Validated {
 public:
  Validated(T value) : value_(std::move(value)) {}
  Validated(std::vector<Diagnostic> errors) : errors_(std::move(errors)) {}

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!value_) throw Error(errors_);
    return *value_;
  }
  T&& value() && {
    if (!value_) throw Error(errors_);
    return std::move(*value_);
  }
  const std::vector<Diagnostic>& errors() const { return errors_; }

  bool has_error(ErrorKind kind) const {
    for (const auto& e : errors_)
      if (e.kind == kind) return true;
    return false;
  }

 private:
  std::optional<T> value_;
  std::vector<Diagnostic> errors_;
};

}  // namespace cdslab

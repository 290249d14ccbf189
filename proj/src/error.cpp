#include "cdslab/error.hpp"

namespace cdslab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::UnknownValue: return "UnknownValue";
    case ErrorKind::UnknownEvent: return "UnknownEvent";
    case ErrorKind::NoPrecondition: return "NoPrecondition";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::NotFunctional: return "NotFunctional";
    case ErrorKind::NotSafe: return "NotSafe";
    case ErrorKind::ErrAlreadyPresent: return "ErrAlreadyPresent";
    case ErrorKind::ValofFilledCell: return "ValofFilledCell";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::RequestUnknownCell: return "RequestUnknownCell";
    case ErrorKind::ArgumentAnswerIllTyped: return "ArgumentAnswerIllTyped";
    case ErrorKind::MiddleMismatch: return "MiddleMismatch";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::UnknownField: return "UnknownField";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::WrongPhase: return "WrongPhase";
    case ErrorKind::IllTypedAnswer: return "IllTypedAnswer";
  }
  return "Unknown";
}

std::string format(const Diagnostic& d) {
  std::string out;
  if (d.line != 0) {
    out += std::to_string(d.line) + ":" + std::to_string(d.column) + ": ";
  }
  out += to_string(d.kind);
  if (!d.message.empty()) {
    out += ": ";
    out += d.message;
  }
  return out;
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "; ";
    out += format(d);
  }
  return out;
}

}  // namespace

Error::Error(Diagnostic d) : Error(std::vector<Diagnostic>{std::move(d)}) {}

Error::Error(std::vector<Diagnostic> ds)
    : std::runtime_error(join_messages(ds)), diagnostics_(std::move(ds)) {
  if (diagnostics_.empty())
    diagnostics_.push_back({ErrorKind::ValidationError, "unspecified"});
}

}  // namespace cdslab

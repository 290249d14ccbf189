#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdslab/syntax.hpp"

namespace cdslab {

/// An argument for f given as a state literal such as "{a=err}" (read in the
/// err-lifted input Cds), the word "manual", or the name of an algorithm whose
/// type is the input of f.
std::shared_ptr<ArgumentProcess> make_argument(const Workspace& ws, const SeqAlg& f,
                                               const std::string& text);

/// Splits on blanks, keeping parenthesised and braced groups together.
std::vector<std::string> split_words(const std::string& line);

/// Plain-text reports shared by the REPL and the batch commands.
std::string classify_report(const Workspace& ws, const std::string& table);
std::string enum_report(const Workspace& ws, const std::string& from, const std::string& to);
std::string ortho_report(const Workspace& ws, const std::string& taster, const std::string& candidate);
std::string member_report(const Workspace& ws, const std::string& behaviour,
                          const std::string& candidate);
std::string subtype_report(const Workspace& ws, const std::string& sub, const std::string& super,
                           bool semantic);
std::string list_report(const Workspace& ws);

/// The interactive interpreter: one algorithm applied to one argument, with
/// requests answered lazily and the internal table kept between them.
class Repl {
 public:
  explicit Repl(Workspace ws) : ws_(std::move(ws)) {}

  /// Runs one command line; returns false once the user quits.
  bool execute(const std::string& line, std::ostream& out);
  /// Reads commands until end of input or quit.
  void run(std::istream& in, std::ostream& out, bool prompt);

  const Workspace& workspace() const { return ws_; }
  const Session* session() const { return session_ ? &*session_ : nullptr; }

 private:
  void dispatch(const std::string& cmd, const std::string& rest, std::ostream& out);
  void print_new_lines(std::ostream& out);
  Session& active();

  Workspace ws_;
  std::optional<Session> session_;
  std::size_t printed_ = 0;
};

}  // namespace cdslab

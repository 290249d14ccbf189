#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "cdslab/repl.hpp"

namespace cdslab {

/// Newline-delimited JSON requests and replies over one connection. Each
/// request names an `op`; every reply carries `ok` and echoes `id` when the
/// request had one. Sessions are numbered from 1 per handler.
class ProtocolHandler {
 public:
  explicit ProtocolHandler(Workspace ws) : ws_(std::move(ws)) {}

  /// One request line in, one reply line out (without the newline).
  std::string handle_line(const std::string& line);
  nlohmann::json handle(const nlohmann::json& request);

  const Workspace& workspace() const { return ws_; }

 private:
  nlohmann::json dispatch(const std::string& op, const nlohmann::json& req);
  Session& session(const nlohmann::json& req);
  nlohmann::json dialogue_reply(int id, const Session& s) const;

  Workspace ws_;
  std::map<int, Session> sessions_;
  int next_session_ = 1;
};

}  // namespace cdslab

#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "cdslab/protocol.hpp"

namespace cdslab {

struct ListenAddress {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
};

/// Accepts "PORT", "HOST:PORT" or ":PORT"; port 0 picks a free port.
std::optional<ListenAddress> parse_listen(const std::string& text);

/// A TCP server speaking the line protocol; each connection gets its own
/// handler and workspace copy, and its requests are answered in order.
class Server {
 public:
  /// Binds and listens; throws std::runtime_error on socket failures.
  Server(Workspace base, const ListenAddress& addr);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const { return port_; }
  /// Accepts connections until stop() is called.
  void serve();
  /// Closes the listening socket and all open connections.
  void stop();

 private:
  void connection(int fd);

  Workspace base_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  std::set<int> clients_;
  std::vector<std::thread> threads_;
};

}  // namespace cdslab

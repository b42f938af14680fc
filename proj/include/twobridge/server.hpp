#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "twobridge/protocol.hpp"

namespace twobridge {

// Log messages go to stderr; TWOBRIDGE_LOG sets the level
// (trace, debug, info, warn, error, critical, off). Default: warn.
void configure_logging();

// Serves one session over a pair of streams until close or end of input.
// Returns the number of requests handled.
long serve_stream(std::istream& in, std::ostream& out, const ServerOptions& options);

// Longest accepted request line, in bytes.
inline constexpr std::size_t kMaxLineBytes = 8u << 20;

// Accepts connections on host:port (port 0 picks a free one) and runs one
// session per connection on its own thread.
class TcpServer {
 public:
  TcpServer(ServerOptions options, const std::string& host, std::uint16_t port);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }

  // Blocks until stop() is called.
  void run();
  // Safe from any thread; closes the listener and all open connections.
  void stop();

 private:
  void serve_connection(int fd);

  ServerOptions options_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mutex_;
  std::set<int> open_fds_;
  std::vector<std::thread> workers_;
};

}  // namespace twobridge

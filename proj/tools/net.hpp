#pragma once

// Blocking TCP transport for wire frames.

#include <cstdint>
#include <optional>
#include <string>

#include "cnmzk/wire.hpp"

namespace cnmzk::net {

class Connection {
 public:
  explicit Connection(int fd) : fd_(fd) {}
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;
  Connection(Connection&& o) noexcept : fd_(o.fd_), buf_(std::move(o.buf_)) { o.fd_ = -1; }
  ~Connection();

  static Connection connect(const std::string& host, std::uint16_t port);

  void send(const wire::Frame& f);
  /// nullopt when the peer closed the connection.
  std::optional<wire::Frame> receive();

 private:
  int fd_;
  wire::FrameBuffer buf_;
};

class Listener {
 public:
  Listener(const std::string& host, std::uint16_t port);
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;
  ~Listener();

  std::uint16_t port() const { return port_; }
  Connection accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace cnmzk::net

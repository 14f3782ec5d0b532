#include "net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace cnmzk::net {
namespace {

[[noreturn]] void sys_fail(const std::string& what) { throw Error(what + ": " + std::strerror(errno)); }

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res) throw Error("cannot resolve " + host);
  sockaddr_in addr{};
  std::memcpy(&addr, res->ai_addr, sizeof addr);
  freeaddrinfo(res);
  addr.sin_port = htons(port);
  return addr;
}

}  // namespace

Connection::~Connection() {
  if (fd_ >= 0) ::close(fd_);
}

Connection Connection::connect(const std::string& host, std::uint16_t port) {
  const sockaddr_in addr = resolve(host, port);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) sys_fail("socket");
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    ::close(fd);
    sys_fail("connect");
  }
  return Connection(fd);
}

void Connection::send(const wire::Frame& f) {
  const Bytes b = f.encode();
  std::size_t off = 0;
  while (off < b.size()) {
    const ssize_t n = ::send(fd_, b.data() + off, b.size() - off, MSG_NOSIGNAL);
    if (n <= 0) sys_fail("send");
    off += static_cast<std::size_t>(n);
  }
}

std::optional<wire::Frame> Connection::receive() {
  for (;;) {
    if (auto f = buf_.next()) return f;
    std::uint8_t chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
    if (n == 0) return std::nullopt;
    if (n < 0) sys_fail("recv");
    buf_.feed({chunk, static_cast<std::size_t>(n)});
  }
}

Listener::Listener(const std::string& host, std::uint16_t port) {
  const sockaddr_in addr = resolve(host, port);
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) sys_fail("socket");
  const int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) sys_fail("bind");
  if (::listen(fd_, 8) != 0) sys_fail("listen");
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

Listener::~Listener() {
  if (fd_ >= 0) ::close(fd_);
}

Connection Listener::accept() {
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) sys_fail("accept");
  return Connection(fd);
}

}  // namespace cnmzk::net

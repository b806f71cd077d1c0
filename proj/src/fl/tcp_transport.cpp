//
// Copyright 2026 The SIFL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sifl/fl/tcp_transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "sifl/core/bytes.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/fl/wire.hpp"

namespace sifl {

namespace {

constexpr std::size_t kHelloBytes = 5;

[[noreturn]] void fail(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

sockaddr_in loopback(std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  return addr;
}

void write_all(int fd, const std::uint8_t* data, std::size_t size) {
  while (size > 0) {
    const ssize_t n = ::send(fd, data, size, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("tcp send");
    }
    data += n;
    size -= static_cast<std::size_t>(n);
  }
}

}  // namespace

TcpTransport::TcpTransport(const std::vector<Address>& endpoints,
                           std::chrono::milliseconds timeout)
    : boxes_(timeout) {
  if (::pipe(wake_) != 0) fail("pipe");
  for (const Address& a : endpoints) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr = loopback(0);
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) fail("bind");
    if (::listen(fd, 64) != 0) fail("listen");
    socklen_t len = sizeof(addr);
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) fail("getsockname");
    listeners_[a] = fd;
    ports_[a] = ntohs(addr.sin_port);
  }
  io_ = std::thread([this] { io_loop(); });
}

TcpTransport::~TcpTransport() {
  stop_ = true;
  const std::uint8_t b = 0;
  [[maybe_unused]] const ssize_t ignored = ::write(wake_[1], &b, 1);
  if (io_.joinable()) io_.join();
  for (auto& [k, fd] : outgoing_) ::close(fd);
  for (auto& c : accepted_) ::close(c.fd);
  for (auto& [a, fd] : listeners_) ::close(fd);
  ::close(wake_[0]);
  ::close(wake_[1]);
}

std::uint16_t TcpTransport::port(const Address& a) const {
  const auto it = ports_.find(a);
  if (it == ports_.end()) throw TransportError("no endpoint " + to_string(a));
  return it->second;
}

void TcpTransport::send(const Address& from, const Address& to, std::vector<std::uint8_t> frame) {
  std::lock_guard lock(send_mu_);
  auto it = outgoing_.find({from, to});
  if (it == outgoing_.end()) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    sockaddr_in addr = loopback(port(to));
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
      ::close(fd);
      fail("connect to " + to_string(to));
    }
    ByteWriter hello;
    hello.u8(static_cast<std::uint8_t>(from.role));
    hello.u32(from.id);
    write_all(fd, hello.bytes().data(), hello.size());
    it = outgoing_.emplace(std::make_pair(from, to), fd).first;
  }
  write_all(it->second, frame.data(), frame.size());
}

Envelope TcpTransport::receive(const Address& at) {
  if (!listeners_.count(at)) throw TransportError("no endpoint " + to_string(at));
  return boxes_.pop(at);
}

void TcpTransport::drain(Connection& c) {
  std::uint8_t chunk[65536];
  const ssize_t n = ::recv(c.fd, chunk, sizeof(chunk), 0);
  if (n <= 0) {
    if (n < 0 && (errno == EINTR || errno == EAGAIN)) return;
    ::close(c.fd);
    c.fd = -1;
    return;
  }
  c.buffer.insert(c.buffer.end(), chunk, chunk + n);
  std::size_t at = 0;
  if (!c.greeted) {
    if (c.buffer.size() < kHelloBytes) return;
    ByteReader r(std::span<const std::uint8_t>(c.buffer.data(), kHelloBytes));
    c.peer.role = static_cast<RoleKind>(r.u8());
    c.peer.id = r.u32();
    c.greeted = true;
    at = kHelloBytes;
  }
  while (true) {
    const std::span<const std::uint8_t> rest(c.buffer.data() + at, c.buffer.size() - at);
    const auto size = frame_size(rest);
    if (!size || rest.size() < *size) break;
    boxes_.push(c.owner, Envelope{c.peer, std::vector<std::uint8_t>(rest.begin(),
                                                                     rest.begin() + *size)});
    at += *size;
  }
  c.buffer.erase(c.buffer.begin(), c.buffer.begin() + static_cast<std::ptrdiff_t>(at));
}

void TcpTransport::io_loop() {
  while (!stop_) {
    std::vector<pollfd> fds;
    std::vector<Address> listener_owner;
    fds.push_back({wake_[0], POLLIN, 0});
    for (const auto& [a, fd] : listeners_) {
      fds.push_back({fd, POLLIN, 0});
      listener_owner.push_back(a);
    }
    const std::size_t first_conn = fds.size();
    for (const auto& c : accepted_) fds.push_back({c.fd, POLLIN, 0});
    if (::poll(fds.data(), fds.size(), 1000) < 0) {
      if (errno == EINTR) continue;
      return;
    }
    if (fds[0].revents) return;
    for (std::size_t i = 0; i < listener_owner.size(); ++i) {
      if (!(fds[1 + i].revents & POLLIN)) continue;
      const int fd = ::accept(fds[1 + i].fd, nullptr, nullptr);
      if (fd < 0) continue;
      Connection c;
      c.fd = fd;
      c.owner = listener_owner[i];
      accepted_.push_back(std::move(c));
    }
    for (std::size_t i = first_conn; i < fds.size(); ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      Connection& c = accepted_[i - first_conn];
      try {
        drain(c);
      } catch (const Error&) {
        // Malformed stream: drop the connection, the receiver then times out.
        ::close(c.fd);
        c.fd = -1;
      }
    }
    std::erase_if(accepted_, [](const Connection& c) { return c.fd < 0; });
  }
}

}  // namespace sifl

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

#ifndef SIFL_FL_TCP_TRANSPORT_HPP_
#define SIFL_FL_TCP_TRANSPORT_HPP_

#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "sifl/fl/transport.hpp"

namespace sifl {

// Loopback TCP. Every address gets a listening socket; a sender opens one
// connection per (sender, receiver) pair and introduces itself with a 5-byte
// hello (u8 role, u32 id) before streaming length-prefixed frames. A single
// I/O thread drains all sockets into mailboxes, so blocking sends never
// deadlock against the single-threaded orchestrator.
class TcpTransport : public Transport {
 public:
  explicit TcpTransport(const std::vector<Address>& endpoints,
                        std::chrono::milliseconds timeout = std::chrono::seconds(60));
  ~TcpTransport() override;
  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

  void send(const Address& from, const Address& to, std::vector<std::uint8_t> frame) override;
  Envelope receive(const Address& at) override;
  std::string name() const override { return "tcp"; }

  std::uint16_t port(const Address& a) const;

 private:
  struct Connection {
    int fd = -1;
    Address owner;  // receiving endpoint
    bool greeted = false;
    Address peer;
    std::vector<std::uint8_t> buffer;
  };

  void io_loop();
  void drain(Connection& c);

  Mailboxes boxes_;
  std::map<Address, int> listeners_;
  std::map<Address, std::uint16_t> ports_;
  std::vector<Connection> accepted_;  // touched by the I/O thread only
  std::mutex send_mu_;
  std::map<std::pair<Address, Address>, int> outgoing_;
  int wake_[2] = {-1, -1};
  std::atomic<bool> stop_{false};
  std::thread io_;
};

}  // namespace sifl

#endif  // SIFL_FL_TCP_TRANSPORT_HPP_

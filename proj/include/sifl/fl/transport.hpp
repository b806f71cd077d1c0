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

#ifndef SIFL_FL_TRANSPORT_HPP_
#define SIFL_FL_TRANSPORT_HPP_

#include <chrono>
#include <compare>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace sifl {

enum class RoleKind : std::uint8_t { kServer = 0, kAggregator = 1, kClient = 2 };

struct Address {
  RoleKind role = RoleKind::kServer;
  std::uint32_t id = 0;  // client index; 0 for server and aggregator

  static Address server() { return {RoleKind::kServer, 0}; }
  static Address aggregator() { return {RoleKind::kAggregator, 0}; }
  static Address client(std::uint32_t id) { return {RoleKind::kClient, id}; }

  auto operator<=>(const Address&) const = default;
};

std::string to_string(const Address& a);

struct Envelope {
  Address from;
  std::vector<std::uint8_t> frame;
};

// Point-to-point delivery of serialized frames. Per (sender, receiver) pair
// frames arrive in send order.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send(const Address& from, const Address& to, std::vector<std::uint8_t> frame) = 0;
  // Blocks until a frame for `at` arrives. Throws TransportError on timeout.
  virtual Envelope receive(const Address& at) = 0;
  virtual std::string name() const = 0;
};

// Thread-safe mailbox per address, shared by the transports below.
class Mailboxes {
 public:
  explicit Mailboxes(std::chrono::milliseconds timeout) : timeout_(timeout) {}
  void push(const Address& to, Envelope env);
  Envelope pop(const Address& at);

 private:
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<Address, std::deque<Envelope>> boxes_;
};

class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(std::chrono::milliseconds timeout = std::chrono::seconds(60))
      : boxes_(timeout) {}
  void send(const Address& from, const Address& to, std::vector<std::uint8_t> frame) override;
  Envelope receive(const Address& at) override;
  std::string name() const override { return "inproc"; }

 private:
  Mailboxes boxes_;
};

// Forwards to an inner transport and reports every delivered frame to `tap`
// as (receiver, envelope): exactly what each role observes.
class TapTransport : public Transport {
 public:
  using Tap = std::function<void(const Address& at, const Envelope& env)>;
  TapTransport(Transport& inner, Tap tap) : inner_(inner), tap_(std::move(tap)) {}
  void send(const Address& from, const Address& to, std::vector<std::uint8_t> frame) override {
    inner_.send(from, to, std::move(frame));
  }
  Envelope receive(const Address& at) override;
  std::string name() const override { return "tap(" + inner_.name() + ")"; }

 private:
  Transport& inner_;
  Tap tap_;
};

}  // namespace sifl

#endif  // SIFL_FL_TRANSPORT_HPP_

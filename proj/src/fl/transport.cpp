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

#include "sifl/fl/transport.hpp"

#include "sifl/core/errors.hpp"

namespace sifl {

std::string to_string(const Address& a) {
  switch (a.role) {
    case RoleKind::kServer:
      return "server";
    case RoleKind::kAggregator:
      return "aggregator";
    case RoleKind::kClient:
      return "client" + std::to_string(a.id);
  }
  return "unknown";
}

void Mailboxes::push(const Address& to, Envelope env) {
  {
    std::lock_guard lock(mu_);
    boxes_[to].push_back(std::move(env));
  }
  cv_.notify_all();
}

Envelope Mailboxes::pop(const Address& at) {
  std::unique_lock lock(mu_);
  auto& box = boxes_[at];
  if (!cv_.wait_for(lock, timeout_, [&] { return !box.empty(); })) {
    throw TransportError("timed out waiting for a frame at " + to_string(at));
  }
  Envelope env = std::move(box.front());
  box.pop_front();
  return env;
}

void InProcessTransport::send(const Address& from, const Address& to,
                              std::vector<std::uint8_t> frame) {
  boxes_.push(to, Envelope{from, std::move(frame)});
}

Envelope InProcessTransport::receive(const Address& at) { return boxes_.pop(at); }

Envelope TapTransport::receive(const Address& at) {
  Envelope env = inner_.receive(at);
  if (tap_) tap_(at, env);
  return env;
}

}  // namespace sifl

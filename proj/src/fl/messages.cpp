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

#include "sifl/fl/messages.hpp"

#include "sifl/core/errors.hpp"

namespace sifl {

std::string to_string(MessageTag tag) {
  switch (tag) {
    case MessageTag::kBroadcastPlain:
      return "BroadcastPlain";
    case MessageTag::kBroadcastEncoded:
      return "BroadcastEncoded";
    case MessageTag::kBroadcastDoublyEncoded:
      return "BroadcastDoublyEncoded";
    case MessageTag::kLocalUpdate:
      return "LocalUpdate";
    case MessageTag::kAggregateToServer:
      return "AggregateToServer";
    case MessageTag::kDone:
      return "Done";
  }
  return "Unknown";
}

bool is_valid_tag(std::uint8_t raw) { return raw >= 1 && raw <= 6; }

Message Message::broadcast_plain(std::uint32_t round, const Vector& w) {
  return {MessageTag::kBroadcastPlain, round, 0, w, 0};
}

Message Message::broadcast_encoded(std::uint32_t round, const Vector& w) {
  return {MessageTag::kBroadcastEncoded, round, 0, w, 0};
}

Message Message::broadcast_doubly_encoded(std::uint32_t round, const Matrix& w) {
  return {MessageTag::kBroadcastDoublyEncoded, round, 0, w, 0};
}

Message Message::local_update(std::uint32_t round, std::uint32_t client_id, const Vector& w,
                              std::uint64_t dataset_size) {
  return {MessageTag::kLocalUpdate, round, client_id, w, dataset_size};
}

Message Message::aggregate(std::uint32_t round, const Matrix& w) {
  return {MessageTag::kAggregateToServer, round, 0, w, 0};
}

Message Message::done(std::uint32_t round, const Vector& w) {
  return {MessageTag::kDone, round, 0, w, 0};
}

Vector Message::vector() const {
  if (payload.cols() != 1) {
    throw ShapeMismatch(to_string(tag) + ": expected a vector payload, got " +
                        std::to_string(payload.rows()) + "x" + std::to_string(payload.cols()));
  }
  return payload.col(0);
}

bool Message::operator==(const Message& other) const {
  return tag == other.tag && round == other.round && client_id == other.client_id &&
         dataset_size == other.dataset_size && payload.rows() == other.payload.rows() &&
         payload.cols() == other.payload.cols() && payload == other.payload;
}

}  // namespace sifl

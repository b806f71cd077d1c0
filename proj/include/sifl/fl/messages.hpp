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

#ifndef SIFL_FL_MESSAGES_HPP_
#define SIFL_FL_MESSAGES_HPP_

#include <cstdint>
#include <string>

#include "sifl/core/types.hpp"

namespace sifl {

enum class MessageTag : std::uint8_t {
  kBroadcastPlain = 1,          // w, n x 1
  kBroadcastEncoded = 2,        // w~, n_tilde x 1
  kBroadcastDoublyEncoded = 3,  // w', n_tilde x p
  kLocalUpdate = 4,             // client model, plus dataset size
  kAggregateToServer = 5,       // n x 1 (plain), n_tilde x 1 or n_tilde x p
  kDone = 6,                    // final plaintext model, n x 1
};

std::string to_string(MessageTag tag);
bool is_valid_tag(std::uint8_t raw);

// Immutable once built. Vectors travel as single-column matrices.
struct Message {
  MessageTag tag = MessageTag::kDone;
  std::uint32_t round = 0;
  std::uint32_t client_id = 0;     // 0 where not applicable
  Matrix payload;
  std::uint64_t dataset_size = 0;  // kLocalUpdate only

  static Message broadcast_plain(std::uint32_t round, const Vector& w);
  static Message broadcast_encoded(std::uint32_t round, const Vector& w);
  static Message broadcast_doubly_encoded(std::uint32_t round, const Matrix& w);
  static Message local_update(std::uint32_t round, std::uint32_t client_id, const Vector& w,
                              std::uint64_t dataset_size);
  static Message aggregate(std::uint32_t round, const Matrix& w);
  static Message done(std::uint32_t round, const Vector& w);

  bool is_vector() const { return payload.cols() == 1; }
  Vector vector() const;  // throws ShapeMismatch unless one column

  bool operator==(const Message& other) const;
};

}  // namespace sifl

#endif  // SIFL_FL_MESSAGES_HPP_

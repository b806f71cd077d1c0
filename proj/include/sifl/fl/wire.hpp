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

#ifndef SIFL_FL_WIRE_HPP_
#define SIFL_FL_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sifl/fl/messages.hpp"

namespace sifl {

// Frame layout, all little-endian:
//   u32 length    bytes that follow this field
//   u8  tag
//   u32 round
//   u32 client_id
//   u32 rows, u32 cols
//   f64 payload[rows * cols], row-major
//   u64 dataset_size   LocalUpdate only
inline constexpr std::size_t kFrameHeaderBytes = 4;
inline constexpr std::uint32_t kMaxFrameBytes = 1u << 31;

std::vector<std::uint8_t> serialize(const Message& msg);

// `frame` must hold exactly one frame, length prefix included.
// Throws FormatError on any inconsistency.
Message deserialize(std::span<const std::uint8_t> frame);

// Total frame size (prefix included) once the prefix is available.
std::optional<std::size_t> frame_size(std::span<const std::uint8_t> buffered);

}  // namespace sifl

#endif  // SIFL_FL_WIRE_HPP_

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

#include "sifl/fl/wire.hpp"

#include <string>

#include "sifl/core/bytes.hpp"
#include "sifl/core/errors.hpp"

namespace sifl {

std::vector<std::uint8_t> serialize(const Message& msg) {
  if (msg.payload.rows() > 0xffffffffLL || msg.payload.cols() > 0xffffffffLL) {
    throw FormatError("serialize: payload dimensions exceed u32");
  }
  ByteWriter w;
  w.u32(0);  // patched below
  w.u8(static_cast<std::uint8_t>(msg.tag));
  w.u32(msg.round);
  w.u32(msg.client_id);
  w.u32(static_cast<std::uint32_t>(msg.payload.rows()));
  w.u32(static_cast<std::uint32_t>(msg.payload.cols()));
  for (Index i = 0; i < msg.payload.rows(); ++i) {
    for (Index j = 0; j < msg.payload.cols(); ++j) w.f64(msg.payload(i, j));
  }
  if (msg.tag == MessageTag::kLocalUpdate) w.u64(msg.dataset_size);
  const std::size_t body = w.bytes().size() - kFrameHeaderBytes;
  if (body >= kMaxFrameBytes) throw FormatError("serialize: frame too large");
  w.patch_u32(0, static_cast<std::uint32_t>(body));
  return std::move(w).bytes();
}

std::optional<std::size_t> frame_size(std::span<const std::uint8_t> buffered) {
  if (buffered.size() < kFrameHeaderBytes) return std::nullopt;
  ByteReader r(buffered.first(kFrameHeaderBytes));
  const std::uint32_t body = r.u32();
  if (body >= kMaxFrameBytes) throw FormatError("frame length exceeds limit");
  return kFrameHeaderBytes + body;
}

Message deserialize(std::span<const std::uint8_t> frame) {
  ByteReader r(frame);
  const std::uint32_t body = r.u32();
  if (static_cast<std::size_t>(body) + kFrameHeaderBytes != frame.size()) {
    throw FormatError("frame length field says " + std::to_string(body) + " bytes, got " +
                      std::to_string(frame.size() - kFrameHeaderBytes));
  }
  const std::uint8_t raw_tag = r.u8();
  if (!is_valid_tag(raw_tag)) throw FormatError("unknown message tag " + std::to_string(raw_tag));
  Message msg;
  msg.tag = static_cast<MessageTag>(raw_tag);
  msg.round = r.u32();
  msg.client_id = r.u32();
  const std::uint64_t rows = r.u32();
  const std::uint64_t cols = r.u32();
  const std::uint64_t trailer = msg.tag == MessageTag::kLocalUpdate ? 8 : 0;
  if (rows * cols * 8 + trailer != r.remaining()) {
    throw FormatError("payload of " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " does not match the frame length");
  }
  msg.payload.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index i = 0; i < msg.payload.rows(); ++i) {
    for (Index j = 0; j < msg.payload.cols(); ++j) msg.payload(i, j) = r.f64();
  }
  if (trailer) msg.dataset_size = r.u64();
  return msg;
}

}  // namespace sifl

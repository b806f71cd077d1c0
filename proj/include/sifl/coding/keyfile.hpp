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

#ifndef SIFL_CODING_KEYFILE_HPP_
#define SIFL_CODING_KEYFILE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "sifl/coding/keys.hpp"
#include "sifl/coding/validate.hpp"

namespace sifl {

// Binary key container:
//   "SIFL" | version u16 | n u32 | n_tilde u32 | p u32     (little endian)
//   Pi1, Pi1^L, N1, Pi2, Pi2^R, N2 as row-major little-endian f64.
inline constexpr char kKeyMagic[4] = {'S', 'I', 'F', 'L'};
inline constexpr std::uint16_t kKeyFormatVersion = 1;

struct KeyBundle {
  ServerKeysd server;
  AggregatorKeysd aggregator;
};

// Only dense keys are serializable.
void write_keys(std::ostream& out, const ServerKeysd& server, const AggregatorKeysd& agg);
void save_keys(const std::filesystem::path& path, const ServerKeysd& server,
               const AggregatorKeysd& agg);

// With revalidate, every key invariant is rechecked and a FormatError thrown
// on failure.
KeyBundle read_keys(std::istream& in, bool revalidate = true);
KeyBundle load_keys(const std::filesystem::path& path, bool revalidate = true);

}  // namespace sifl

#endif  // SIFL_CODING_KEYFILE_HPP_

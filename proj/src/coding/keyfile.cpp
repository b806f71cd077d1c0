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

#include "sifl/coding/keyfile.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <vector>

#include "sifl/core/bytes.hpp"

namespace sifl {
namespace {

template <typename Derived>
void put_matrix(ByteWriter& w, const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) w.f64(m(i, j));
  }
}

Matrix get_matrix(ByteReader& r, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = r.f64();
  }
  return m;
}

std::uint32_t checked_u32(Index v) {
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    throw DimensionError("key dimension does not fit in u32");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

void write_keys(std::ostream& out, const ServerKeysd& server, const AggregatorKeysd& agg) {
  if (!server.is_dense()) {
    throw InvalidArgs("write_keys: structured keys are not serializable; regenerate from seed");
  }
  ByteWriter w;
  for (char c : kKeyMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u16(kKeyFormatVersion);
  w.u32(checked_u32(server.n()));
  w.u32(checked_u32(server.n_tilde()));
  w.u32(checked_u32(agg.p()));
  put_matrix(w, server.pi1());
  put_matrix(w, server.pi1_left());
  put_matrix(w, server.n1());
  put_matrix(w, agg.pi2());
  put_matrix(w, agg.pi2_right());
  put_matrix(w, agg.n2());
  const auto& bytes = w.bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write_keys: stream write failed");
}

void save_keys(const std::filesystem::path& path, const ServerKeysd& server,
               const AggregatorKeysd& agg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_keys(out, server, agg);
}

KeyBundle read_keys(std::istream& in, bool revalidate) {
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  ByteReader r(bytes);
  for (char c : kKeyMagic) {
    if (r.u8() != static_cast<std::uint8_t>(c)) throw FormatError("bad magic, not a SIFL key file");
  }
  const std::uint16_t version = r.u16();
  if (version != kKeyFormatVersion) {
    throw FormatError("unsupported key format version " + std::to_string(version));
  }
  const Index n = r.u32();
  const Index nt = r.u32();
  const Index p = r.u32();
  if (n < 1 || nt <= n || p < 2) throw FormatError("invalid dimensions in key header");
  const std::size_t doubles = static_cast<std::size_t>(nt * n * 2 + nt * (nt - n) + 2 * p +
                                                       (p - 1) * p);
  if (r.remaining() != doubles * 8) {
    throw FormatError("key payload size mismatch: expected " + std::to_string(doubles * 8) +
                      " bytes, found " + std::to_string(r.remaining()));
  }
  Matrix pi1 = get_matrix(r, nt, n);
  Matrix pi1_left = get_matrix(r, n, nt);
  Matrix n1 = get_matrix(r, nt, nt - n);
  RowVector pi2 = get_matrix(r, 1, p);
  Vector pi2_right = get_matrix(r, p, 1);
  Matrix n2 = get_matrix(r, p - 1, p);
  KeyBundle bundle{
      ServerKeysd::from_matrices(std::move(pi1), std::move(pi1_left), std::move(n1)),
      AggregatorKeysd::from_matrices(std::move(pi2), std::move(pi2_right), std::move(n2))};
  if (revalidate) {
    const auto report = validate_keys(bundle.server, bundle.aggregator);
    if (!report.passed()) throw FormatError("key invariants violated:\n" + report.to_text());
  }
  return bundle;
}

KeyBundle load_keys(const std::filesystem::path& path, bool revalidate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_keys(in, revalidate);
}

}  // namespace sifl

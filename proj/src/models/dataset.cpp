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

#include "sifl/models/dataset.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>

#include "sifl/core/errors.hpp"
#include "sifl/core/rng.hpp"

namespace sifl {

void Dataset::validate() const {
  if (features.rows() < 1) throw EmptyDataset("dataset has no rows");
  if (labels.size() != features.rows()) {
    throw DimensionError("dataset: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(features.rows()) + " rows");
  }
}

Dataset Dataset::subset(std::span<const Index> rows) const {
  Dataset out;
  out.features.resize(static_cast<Index>(rows.size()), dim());
  out.labels.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Index r = rows[i];
    if (r < 0 || r >= size()) throw DimensionError("subset: row index out of range");
    out.features.row(static_cast<Index>(i)) = features.row(r);
    out.labels(static_cast<Index>(i)) = labels(r);
  }
  return out;
}

namespace {

double parse_field(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

Dataset parse_csv(std::istream& in, const CsvSchema& schema) {
  std::vector<std::vector<double>> rows;
  std::string text;
  std::size_t line = 0;
  std::size_t width = 0;
  while (std::getline(in, text)) {
    ++line;
    if (line == 1 && schema.has_header) continue;
    if (text.empty() || text == "\r") continue;
    std::vector<double> values;
    std::string_view rest(text);
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_field(rest.substr(0, comma), line));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (width == 0) width = values.size();
    if (values.size() != width) {
      throw ParseError(line, "expected " + std::to_string(width) + " fields, found " +
                                 std::to_string(values.size()));
    }
    if (schema.label_column < 0 || static_cast<std::size_t>(schema.label_column) >= width) {
      throw ParseError(line, "label column out of range");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw EmptyDataset("csv contains no data rows");
  if (width < 2) throw ParseError(line, "need at least one feature and one label column");

  Dataset ds;
  ds.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(width - 1));
  ds.labels.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Index col = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (static_cast<Index>(j) == schema.label_column) {
        ds.labels(static_cast<Index>(i)) = rows[i][j];
      } else {
        ds.features(static_cast<Index>(i), col++) = rows[i][j];
      }
    }
  }
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_csv(in, schema);
}

void write_csv(std::ostream& out, const Dataset& ds, const CsvSchema& schema) {
  ds.validate();
  const Index width = ds.dim() + 1;
  if (schema.label_column < 0 || schema.label_column >= width) {
    throw InvalidArgs("write_csv: label column out of range");
  }
  if (schema.has_header) {
    for (Index j = 0; j < width; ++j) {
      if (j) out << ',';
      out << (j == schema.label_column ? std::string("label")
                                       : "x" + std::to_string(j < schema.label_column ? j : j - 1));
    }
    out << '\n';
  }
  char buf[64];
  for (Index i = 0; i < ds.size(); ++i) {
    Index col = 0;
    for (Index j = 0; j < width; ++j) {
      if (j) out << ',';
      const double v = j == schema.label_column ? ds.labels(i) : ds.features(i, col++);
      const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
  if (!out) throw IoError("write_csv: stream write failed");
}

void save_csv(const std::filesystem::path& path, const Dataset& ds, const CsvSchema& schema) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(out, ds, schema);
}

Dataset synth_dataset(const SyntheticSpec& spec) {
  if (spec.samples < 1 || spec.dim < 1) throw InvalidArgs("synth_dataset: empty shape");
  Rng rng(derive_seed(spec.seed, Stream::kSynthetic));
  Dataset ds;
  ds.features.resize(spec.samples, spec.dim);
  ds.labels.resize(spec.samples);
  if (spec.kind == SyntheticKind::kBlobs) {
    if (spec.classes < 2) throw InvalidArgs("synth_dataset: blobs need >= 2 classes");
    Matrix centers(spec.classes, spec.dim);
    for (Index c = 0; c < spec.classes; ++c) {
      for (Index j = 0; j < spec.dim; ++j) centers(c, j) = spec.separation * rng.normal();
    }
    for (Index i = 0; i < spec.samples; ++i) {
      const Index c = static_cast<Index>(rng.index(static_cast<std::uint64_t>(spec.classes)));
      ds.labels(i) = static_cast<double>(c);
      for (Index j = 0; j < spec.dim; ++j) ds.features(i, j) = centers(c, j) + rng.normal();
    }
  } else {
    Vector beta(spec.dim);
    for (Index j = 0; j < spec.dim; ++j) beta(j) = rng.normal();
    for (Index i = 0; i < spec.samples; ++i) {
      for (Index j = 0; j < spec.dim; ++j) ds.features(i, j) = rng.normal();
      ds.labels(i) = ds.features.row(i).dot(beta) + 0.1 * rng.normal();
    }
  }
  return ds;
}

Partition partition_iid(Index samples, Index clients, std::uint64_t seed) {
  if (clients < 1) throw InvalidArgs("partition_iid: need at least one client");
  if (clients > samples) {
    throw TooManyClients("partition_iid: " + std::to_string(clients) + " clients for " +
                         std::to_string(samples) + " samples");
  }
  std::vector<Index> order(static_cast<std::size_t>(samples));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(derive_seed(seed, Stream::kPartition));
  rng.shuffle(order.begin(), order.end());

  Partition part;
  part.total = samples;
  const Index base = samples / clients;
  const Index extra = samples % clients;
  auto it = order.begin();
  for (Index c = 0; c < clients; ++c) {
    const Index size = base + (c < extra ? 1 : 0);
    part.client_rows.emplace_back(it, it + size);
    it += size;
    part.sizes.push_back(size);
    part.weights.push_back(static_cast<double>(size) / static_cast<double>(samples));
  }
  return part;
}

}  // namespace sifl

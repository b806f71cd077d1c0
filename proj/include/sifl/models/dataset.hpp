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

#ifndef SIFL_MODELS_DATASET_HPP_
#define SIFL_MODELS_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "sifl/core/types.hpp"

namespace sifl {

// m x d features with one label per row. Class labels are stored as exact
// small integers in a real vector.
struct Dataset {
  Matrix features;
  Vector labels;

  Index size() const { return features.rows(); }
  Index dim() const { return features.cols(); }

  // Throws EmptyDataset / DimensionError.
  void validate() const;
  Dataset subset(std::span<const Index> rows) const;
};

struct CsvSchema {
  bool has_header = false;
  Index label_column = 0;
};

Dataset parse_csv(std::istream& in, const CsvSchema& schema);
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema);
// Features written with 17 significant digits so a reload is bit-exact.
void write_csv(std::ostream& out, const Dataset& ds, const CsvSchema& schema);
void save_csv(const std::filesystem::path& path, const Dataset& ds, const CsvSchema& schema);

enum class SyntheticKind {
  kBlobs,   // Gaussian class clusters, labels 0..classes-1
  kLinear,  // y = <x, beta> + noise
};

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::kBlobs;
  Index samples = 1000;
  Index dim = 10;
  Index classes = 2;
  double separation = 2.0;  // std of class centers, in units of the cluster std
  std::uint64_t seed = 0;
};

Dataset synth_dataset(const SyntheticSpec& spec);

// IID split. Client i receives sizes[i] rows; the first (m mod N_c) clients
// get one extra row.
struct Partition {
  std::vector<std::vector<Index>> client_rows;
  std::vector<Index> sizes;
  std::vector<double> weights;  // |D_i| / |D|
  Index total = 0;

  Index clients() const { return static_cast<Index>(sizes.size()); }
};

Partition partition_iid(Index samples, Index clients, std::uint64_t seed);
inline Partition partition_iid(const Dataset& ds, Index clients, std::uint64_t seed) {
  return partition_iid(ds.size(), clients, seed);
}

}  // namespace sifl

#endif  // SIFL_MODELS_DATASET_HPP_

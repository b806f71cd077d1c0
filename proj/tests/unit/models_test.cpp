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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/models/dataset.hpp"
#include "sifl/models/model.hpp"
#include "sifl/models/params.hpp"

namespace sifl {
namespace {

Dataset random_classification(Index m, Index d, Index classes, std::uint64_t seed) {
  oracle::Gen gen(seed);
  Dataset ds{gen.mat(m, d), Vector(m)};
  for (Index i = 0; i < m; ++i) ds.labels(i) = static_cast<double>(gen.integer(0, classes - 1));
  return ds;
}

double fd_rel_error(const ModelSpec& spec, const Vector& w, const Dataset& ds) {
  const Vector g = loss_and_grad(spec, w, ds).grad;
  const Vector fd = oracle::central_gradient(
      [&](const Vector& x) { return loss_and_grad(spec, x, ds).loss; }, w);
  return (g - fd).norm() / std::max(fd.norm(), 1e-12);
}

TEST(Model, LinearHandExample) {
  const ModelSpec spec = LinearRegression{1};
  Dataset ds{Matrix::Ones(1, 1), Vector::Ones(1)};
  const auto lg = loss_and_grad(spec, Vector::Zero(1), ds);
  EXPECT_DOUBLE_EQ(lg.loss, 0.5);
  EXPECT_DOUBLE_EQ(lg.grad(0), -1.0);
}

TEST(Model, LogisticAtZeroIsLogTwo) {
  const ModelSpec spec = LogisticRegression{4, 2};
  const auto ds = random_classification(30, 4, 2, 1);
  EXPECT_NEAR(loss_and_grad(spec, Vector::Zero(parameter_count(spec)), ds).loss, std::log(2.0),
              1e-15);
}

TEST(Model, GradientsMatchFiniteDifferences) {
  oracle::Gen gen(2);
  const std::vector<ModelSpec> specs = {LinearRegression{3}, LogisticRegression{4, 3},
                                        Mlp{{2, 3, 2}}, Mlp{{5, 4, 3, 3}}};
  for (const auto& spec : specs) {
    const auto* mlp = std::get_if<Mlp>(&spec);
    const Index classes = mlp ? mlp->layers.back() : 3;
    Dataset ds = random_classification(20, input_dim(spec), classes, gen.seed());
    if (!is_classifier(spec)) ds.labels = gen.vec(20);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector w = gen.vec(parameter_count(spec), 0.7);
      EXPECT_LT(fd_rel_error(spec, w, ds), 1e-5) << describe(spec);
    }
  }
}

TEST(Model, BatchGradientIsMeanOverBatch) {
  const ModelSpec spec = Mlp{{3, 4, 2}};
  const auto ds = random_classification(10, 3, 2, 3);
  oracle::Gen gen(3);
  const Vector w = gen.vec(parameter_count(spec));
  const std::vector<Index> batch = {1, 4, 7};
  Vector sum = Vector::Zero(w.size());
  for (Index i : batch) {
    const std::vector<Index> one = {i};
    sum += loss_and_grad(spec, w, ds, one).grad;
  }
  EXPECT_LT((loss_and_grad(spec, w, ds, batch).grad - sum / 3.0).norm(), 1e-14);
}

TEST(Model, ErrorsOnBadInput) {
  const ModelSpec spec = LogisticRegression{3, 2};
  const auto ds = random_classification(5, 3, 2, 4);
  EXPECT_THROW(loss_and_grad(spec, Vector::Zero(7), ds), DimensionError);
  EXPECT_THROW(loss_and_grad(spec, Vector::Zero(8), ds, std::span<const Index>{}), EmptyBatch);
  const auto wide = random_classification(5, 4, 2, 4);
  EXPECT_THROW(loss_and_grad(spec, Vector::Zero(8), wide), DimensionError);
  auto bad_labels = ds;
  bad_labels.labels(0) = 0.5;
  EXPECT_THROW(loss_and_grad(spec, Vector::Zero(8), bad_labels), DimensionError);
  bad_labels.labels(0) = 2;
  EXPECT_THROW(loss_and_grad(spec, Vector::Zero(8), bad_labels), DimensionError);
  EXPECT_THROW(accuracy(LinearRegression{3}, Vector::Zero(3), ds), InvalidArgs);
}

TEST(Model, AccuracyChanceAndPerfect) {
  Dataset ds{Matrix::Zero(100, 2), Vector(100)};
  for (Index i = 0; i < 100; ++i) ds.labels(i) = static_cast<double>(i % 10);
  EXPECT_NEAR(accuracy(LogisticRegression{2, 10}, Vector::Zero(30), ds), 0.1, 1e-15);

  Dataset sep{Matrix(4, 1), Vector(4)};
  sep.features << -2, -1, 1, 2;
  sep.labels << 0, 0, 1, 1;
  // Row-major class weights, then biases.
  Vector w(4);
  w << -1, 1, 0, 0;
  EXPECT_DOUBLE_EQ(accuracy(LogisticRegression{1, 2}, w, sep), 1.0);
}

TEST(Model, ParameterCounts) {
  EXPECT_EQ(parameter_count(Mlp{{784, 200, 200, 10}}), 199210);
  EXPECT_EQ(parameter_count(Mlp{{784, 16, 10}}), 12730);
  EXPECT_EQ(parameter_count(LogisticRegression{10, 2}), 22);
  EXPECT_EQ(parameter_count(LinearRegression{7}), 7);
}

TEST(Model, InitIsSeededAndSmall) {
  const ModelSpec spec = Mlp{{4, 5, 3}};
  const Vector a = init_params(spec, 9);
  EXPECT_EQ(a, init_params(spec, 9));
  EXPECT_NE(a, init_params(spec, 10));
  EXPECT_LE(a.cwiseAbs().maxCoeff(), 0.05);
}

TEST(Params, FlattenRoundTrip) {
  oracle::Gen gen(5);
  const std::vector<Index> sizes = {3, 4, 2};
  std::vector<DenseLayer> layers = {{gen.mat(4, 3), gen.vec(4)}, {gen.mat(2, 4), gen.vec(2)}};
  const Vector flat = flatten_params(layers);
  EXPECT_EQ(flat.size(), flat_size(sizes));
  EXPECT_EQ(flat(1), layers[0].weights(0, 1));  // row-major weights
  EXPECT_EQ(flat(12), layers[0].bias(0));       // then bias
  const auto back = unflatten_params(sizes, flat);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t l = 0; l < 2; ++l) {
    EXPECT_EQ(back[l].weights, layers[l].weights);
    EXPECT_EQ(back[l].bias, layers[l].bias);
  }
  EXPECT_THROW(unflatten_params(sizes, Vector::Zero(flat.size() - 1)), ShapeMismatch);
  EXPECT_THROW(unflatten_params(sizes, Vector::Zero(flat.size() + 1)), ShapeMismatch);
  const std::vector<Index> table = {784, 200, 200, 10};
  EXPECT_EQ(flat_size(table), 199210);
}

TEST(Partition, SixtyThousandOverTenIsEven) {
  const auto p = partition_iid(60000, 10, 1);
  for (Index s : p.sizes) EXPECT_EQ(s, 6000);
  for (double c : p.weights) EXPECT_EQ(c, 0.1);
}

TEST(Partition, UnevenSplitAndCoverage) {
  const auto p = partition_iid(10, 3, 2);
  EXPECT_EQ(p.sizes, (std::vector<Index>{4, 3, 3}));
  std::set<Index> seen;
  for (const auto& rows : p.client_rows) {
    for (Index r : rows) EXPECT_TRUE(seen.insert(r).second);
  }
  EXPECT_EQ(seen.size(), 10u);
  EXPECT_EQ(*seen.rbegin(), 9);
  const double total = std::accumulate(p.weights.begin(), p.weights.end(), 0.0);
  EXPECT_LE(std::fabs(total - 1.0), std::numeric_limits<double>::epsilon());
}

TEST(Partition, WeightsSumToOneProperty) {
  oracle::Gen gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = gen.integer(1, 5000);
    const Index n = gen.integer(1, std::min<Index>(m, 64));
    const auto p = partition_iid(m, n, gen.seed());
    EXPECT_EQ(std::accumulate(p.sizes.begin(), p.sizes.end(), Index{0}), m);
    const double total = std::accumulate(p.weights.begin(), p.weights.end(), 0.0);
    // Naive summation of n rounded terms errs by at most n ulp.
    ASSERT_LE(std::fabs(total - 1.0), static_cast<double>(n) * std::numeric_limits<double>::epsilon())
        << m << " " << n;
  }
}

TEST(Partition, DeterministicAndGuarded) {
  EXPECT_EQ(partition_iid(100, 7, 3).client_rows, partition_iid(100, 7, 3).client_rows);
  EXPECT_NE(partition_iid(100, 7, 3).client_rows, partition_iid(100, 7, 4).client_rows);
  EXPECT_THROW(partition_iid(3, 4, 1), TooManyClients);
}

TEST(Csv, RoundTripIsBitExact) {
  oracle::Gen gen(7);
  Dataset ds{gen.mat(12, 3, 1e3), Vector(12)};
  ds.features(0, 0) = 1.0 / 3.0;
  ds.features(1, 1) = -5e-300;
  for (Index i = 0; i < 12; ++i) ds.labels(i) = static_cast<double>(i % 3);
  for (bool header : {false, true}) {
    for (Index label_col : {0, 2, 3}) {
      const CsvSchema schema{header, label_col};
      std::stringstream buf;
      write_csv(buf, ds, schema);
      const Dataset back = parse_csv(buf, schema);
      EXPECT_EQ(back.features, ds.features);
      EXPECT_EQ(back.labels, ds.labels);
    }
  }
}

TEST(Csv, MalformedRowReportsLine) {
  std::istringstream in("x0,label\n1,0\n2,1\n3,abc\n");
  try {
    parse_csv(in, CsvSchema{true, 1});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  std::istringstream ragged("1,2,0\n1,0\n");
  EXPECT_THROW(parse_csv(ragged, CsvSchema{false, 2}), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(parse_csv(empty, CsvSchema{}), EmptyDataset);
  EXPECT_THROW(load_csv("/nonexistent/file.csv", CsvSchema{}), IoError);
}

TEST(Synthetic, SeededAndShaped) {
  SyntheticSpec spec;
  spec.samples = 200;
  spec.dim = 6;
  spec.classes = 4;
  spec.seed = 3;
  const auto a = synth_dataset(spec);
  EXPECT_EQ(a.size(), 200);
  EXPECT_EQ(a.dim(), 6);
  EXPECT_EQ(a.features, synth_dataset(spec).features);
  std::set<double> labels(a.labels.data(), a.labels.data() + a.labels.size());
  EXPECT_EQ(labels, (std::set<double>{0, 1, 2, 3}));
  spec.kind = SyntheticKind::kLinear;
  EXPECT_NO_THROW(synth_dataset(spec).validate());
}

TEST(Dataset, SubsetAndValidate) {
  Dataset ds{Matrix(3, 1), Vector(3)};
  ds.features << 1, 2, 3;
  ds.labels << 0, 1, 0;
  const std::vector<Index> rows = {2, 0};
  const auto s = ds.subset(rows);
  EXPECT_EQ(s.features(0, 0), 3);
  EXPECT_EQ(s.labels(1), 0);
  Dataset bad{Matrix(3, 1), Vector(2)};
  EXPECT_THROW(bad.validate(), DimensionError);
}

}  // namespace
}  // namespace sifl

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
#include <vector>

#include "oracles.hpp"
#include "sifl/coding/codec.hpp"
#include "sifl/models/dataset.hpp"
#include "sifl/optim/local_run.hpp"
#include "sifl/optim/optimizer.hpp"

namespace sifl {
namespace {

// l(w) = (w - 1)^2 / 2 on a single record.
Objective quadratic() {
  return Objective{1, [](const Vector& w, std::span<const Index>) {
                     return LossGrad{0.5 * (w(0) - 1) * (w(0) - 1), Vector::Constant(1, w(0) - 1)};
                   }};
}

Vector one(double v) { return Vector::Constant(1, v); }

TEST(Optimizer, SgdStep) {
  auto s = OptimizerState::make(Sgd{0.5}, 1);
  EXPECT_DOUBLE_EQ(step_g(s, one(0), one(-1))(0), -0.5);
}

TEST(Optimizer, MomentumRecurrence) {
  auto s = OptimizerState::make(Momentum{0.1, 0.9}, 1);
  EXPECT_NEAR(step_g(s, one(0), one(1))(0), 0.1, 1e-15);
  EXPECT_NEAR(step_g(s, one(0), one(1))(0), 0.19, 1e-15);
}

TEST(Optimizer, AdamFirstStep) {
  auto s = OptimizerState::make(Adam{0.001, 0.9, 0.999, 1e-8}, 1);
  EXPECT_NEAR(step_g(s, one(0), one(1))(0), 0.001 / (1 + 1e-8), 1e-15);
  EXPECT_EQ(s.step_count, 1);
}

TEST(Optimizer, AdamMatchesHandUnrolledMoments) {
  const Adam a{0.01, 0.8, 0.95, 1e-6};
  auto s = OptimizerState::make(a, 2);
  oracle::Gen gen(1);
  double m0 = 0, v0 = 0;
  for (int t = 1; t <= 6; ++t) {
    const Vector g = gen.vec(2);
    const Vector step = step_g(s, Vector::Zero(2), g);
    m0 = a.beta1 * m0 + (1 - a.beta1) * g(0);
    v0 = a.beta2 * v0 + (1 - a.beta2) * g(0) * g(0);
    const double mhat = m0 / (1 - std::pow(a.beta1, t));
    const double vhat = v0 / (1 - std::pow(a.beta2, t));
    EXPECT_NEAR(step(0), a.lr * mhat / (std::sqrt(vhat) + a.eps), 1e-15);
  }
}

TEST(Optimizer, InvalidHyperparameters) {
  EXPECT_THROW(validate(Sgd{0}), InvalidArgs);
  EXPECT_THROW(validate(Momentum{0.1, 1.0}), InvalidArgs);
  EXPECT_THROW(validate(Adam{0.1, 0.9, -0.1, 1e-8}), InvalidArgs);
  EXPECT_THROW(validate(Adam{0.1, 0.9, 0.99, 0}), InvalidArgs);
  EXPECT_NO_THROW(validate(Momentum{0.1, 0.0}));
}

TEST(Optimizer, LengthMismatchThrows) {
  auto s = OptimizerState::make(Momentum{}, 3);
  EXPECT_THROW(step_g(s, Vector::Zero(3), Vector::Zero(2)), DimensionError);
  EXPECT_THROW(step_g(s, Vector::Zero(2), Vector::Zero(2)), DimensionError);
}

TEST(LocalRun, QuadraticHandRecurrence) {
  Rng rng(1);
  LocalRunConfig cfg;
  auto s = OptimizerState::make(Sgd{0.5}, 1);
  EXPECT_DOUBLE_EQ(plain_local_run(s, one(0), quadratic(), cfg, rng)(0), 0.5);
  cfg.local_steps = 2;
  EXPECT_DOUBLE_EQ(plain_local_run(s, one(0), quadratic(), cfg, rng)(0), 0.75);
  cfg.local_steps = 1;
  cfg.clip = 0.3;
  EXPECT_DOUBLE_EQ(plain_local_run(s, one(0), quadratic(), cfg, rng)(0), 0.3);
}

TEST(LocalRun, TargetHandExample) {
  Matrix pi1(2, 1);
  pi1 << 1, 1;
  const auto keys = ServerKeysd::from_pi1(pi1);
  Rng rng(1);
  auto s = OptimizerState::make(Sgd{0.5}, 1);
  const auto x = target_local_run(keys, s, EncodedVectord{Vector::Zero(2)}, quadratic(),
                                  LocalRunConfig{}, rng);
  EXPECT_NEAR(x.values(0), 0.5, 1e-15);
  EXPECT_NEAR(x.values(1), 0.5, 1e-15);
}

TEST(LocalRun, SamplerEpochsWithoutReplacement) {
  Rng rng(3);
  BatchSampler sampler(10, 3, rng);
  for (int epoch = 0; epoch < 4; ++epoch) {
    std::vector<int> hits(10, 0);
    for (int b = 0; b < 3; ++b) {
      for (Index i : sampler.next()) ++hits[i];
    }
    for (int h : hits) EXPECT_LE(h, 1);
  }
  Rng a(5), b(5);
  BatchSampler sa(50, 7, a), sb(50, 7, b);
  for (int i = 0; i < 20; ++i) {
    const auto x = sa.next();
    const auto y = sb.next();
    ASSERT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
  }
  EXPECT_THROW(BatchSampler(0, 1, rng), EmptyDataset);
}

TEST(LocalRun, ClipIsProjection) {
  Vector w(2);
  w << 3, 4;
  EXPECT_NEAR(clip_to_norm(w, 1).norm(), 1, 1e-15);
  EXPECT_EQ(clip_to_norm(w, 10), w);
  EXPECT_EQ(clip_to_norm(w, std::numeric_limits<double>::infinity()), w);
}

TEST(LocalRun, DeterministicTrajectories) {
  SyntheticSpec spec;
  spec.samples = 60;
  spec.dim = 4;
  spec.seed = 2;
  const auto ds = synth_dataset(spec);
  const ModelSpec model = LogisticRegression{4, 2};
  const auto obj = model_objective(model, ds);
  LocalRunConfig cfg{5, 8};
  const Vector w0 = init_params(model, 1);
  Rng r1(9), r2(9);
  auto s1 = OptimizerState::make(Adam{0.01}, w0.size());
  auto s2 = OptimizerState::make(Adam{0.01}, w0.size());
  const Vector a = plain_local_run(s1, w0, obj, cfg, r1);
  const Vector b = plain_local_run(s2, w0, obj, cfg, r2);
  EXPECT_EQ(a, b);
}

// Property: decoding the target run equals the plain run for any kernel offset.
TEST(LocalRun, ImmersionInvarianceProperty) {
  oracle::Gen gen(11);
  const ModelSpec model = LogisticRegression{5, 2};
  SyntheticSpec spec;
  spec.samples = 80;
  spec.dim = 5;
  spec.seed = 4;
  const auto ds = synth_dataset(spec);
  const auto obj = model_objective(model, ds);
  const std::vector<OptimizerKind> opts = {Sgd{0.1}, Momentum{0.05, 0.9}, Adam{0.01}};
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = parameter_count(model);
    KeyGenConfig kc;
    kc.n = n;
    kc.n_tilde = n + gen.integer(1, 16);
    kc.seed = gen.seed();
    const auto keys = gen_server_keys(kc);
    const Vector w0 = gen.vec(n);
    const Vector r = gen.vec(keys.kernel_dim(), 1e3);
    const LocalRunConfig cfg{3, gen.integer(0, 20)};
    const auto& opt = opts[trial % 3];
    const std::uint64_t seed = gen.seed();
    Rng ra(seed), rb(seed);
    auto sa = OptimizerState::make(opt, n);
    auto sb = OptimizerState::make(opt, n);
    const Vector plain = plain_local_run(sa, w0, obj, cfg, ra);
    const auto enc = target_local_run(keys, sb, encode_model(keys, w0, r), obj, cfg, rb);
    const Vector expect = keys.pi1() * plain + keys.n1() * r;
    ASSERT_LT((enc.values - expect).cwiseAbs().maxCoeff(), 1e-9) << "trial " << trial;
    ASSERT_LT((decode_model(keys, enc) - plain).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(LocalRun, OffManifoldStartTracksDecodedStart) {
  oracle::Gen gen(12);
  const ModelSpec model = LogisticRegression{3, 2};
  SyntheticSpec spec;
  spec.samples = 40;
  spec.dim = 3;
  const auto ds = synth_dataset(spec);
  const auto obj = model_objective(model, ds);
  KeyGenConfig kc;
  kc.n = 8;
  kc.n_tilde = 12;
  const auto keys = gen_server_keys(kc);
  const Vector x0 = gen.vec(12);  // arbitrary, not of the form Pi1 w + N1 r
  const LocalRunConfig cfg{10, 0};
  Rng ra(1), rb(1);
  auto sa = OptimizerState::make(Sgd{0.1}, 8);
  auto sb = OptimizerState::make(Sgd{0.1}, 8);
  const auto enc = target_local_run(keys, sa, EncodedVectord{x0}, obj, cfg, ra);
  const Vector plain = plain_local_run(sb, keys.pi1_left() * x0, obj, cfg, rb);
  EXPECT_LT((keys.pi1_left() * enc.values - plain).norm(), 1e-10);
}

TEST(LocalRun, ClippedTargetStaysOnManifold) {
  KeyGenConfig kc;
  kc.n = 1;
  kc.n_tilde = 3;
  const auto keys = gen_server_keys(kc);
  const Vector r = Vector::Constant(2, 7.0);
  LocalRunConfig cfg;
  cfg.clip = 0.3;
  Rng ra(1), rb(1);
  auto sa = OptimizerState::make(Sgd{0.5}, 1);
  auto sb = OptimizerState::make(Sgd{0.5}, 1);
  const auto enc = target_local_run(keys, sa, encode_model(keys, one(0), r), quadratic(), cfg, ra);
  const Vector plain = plain_local_run(sb, one(0), quadratic(), cfg, rb);
  EXPECT_LT((enc.values - (keys.pi1() * plain + keys.n1() * r)).norm(), 1e-12);
}

TEST(LocalRun, ShapeErrors) {
  KeyGenConfig kc;
  kc.n = 1;
  kc.n_tilde = 3;
  const auto keys = gen_server_keys(kc);
  Rng rng(1);
  auto s = OptimizerState::make(Sgd{0.5}, 1);
  EXPECT_THROW(target_local_run(keys, s, EncodedVectord{Vector::Zero(2)}, quadratic(),
                                LocalRunConfig{}, rng),
               DimensionError);
  EXPECT_THROW(plain_local_run(s, one(0), quadratic(), LocalRunConfig{0, 0}, rng), InvalidArgs);
}

}  // namespace
}  // namespace sifl

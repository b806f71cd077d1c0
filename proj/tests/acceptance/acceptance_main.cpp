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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "golden_messages.hpp"
#include "oracles.hpp"
#include "sifl/coding/codec.hpp"
#include "sifl/coding/keys.hpp"
#include "sifl/coding/validate.hpp"
#include "sifl/dp/calculus.hpp"
#include "sifl/dp/qfunc.hpp"
#include "sifl/dp/samplers.hpp"
#include "sifl/fl/roles.hpp"
#include "sifl/fl/training.hpp"
#include "sifl/fl/transport.hpp"
#include "sifl/fl/wire.hpp"
#include "sifl/models/dataset.hpp"
#include "sifl/optim/local_run.hpp"

namespace sifl {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double trace_gap(const TrainingTrace& a, const TrainingTrace& b) {
  if (a.rounds.size() != b.rounds.size()) return std::numeric_limits<double>::infinity();
  double g = 0;
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    g = std::max(g, oracle::max_abs_diff(a.rounds[t].global, b.rounds[t].global));
  }
  return std::max(g, oracle::max_abs_diff(a.final_model, b.final_model));
}

bool same_accuracy(const TrainingTrace& a, const TrainingTrace& b) {
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    if (a.rounds[t].test_accuracy != b.rounds[t].test_accuracy) return false;
  }
  return true;
}

// 1. Key algebra over random configurations.
Outcome key_algebra() {
  Outcome out;
  oracle::Gen gen(101);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    KeyGenConfig c;
    c.n = gen.integer(1, 64);
    c.n_tilde = c.n + gen.integer(1, 16);
    c.p = gen.integer(2, 8);
    c.seed = gen.seed();
    const auto server = gen_server_keys(c);
    const auto agg = gen_aggregator_keys(c);
    const auto report = validate_keys(server, agg);
    out.require(report.passed(), "trial " + std::to_string(trial) + ":\n" + report.to_text());
    for (const char* name : {"left_inverse", "kernel_annihilation", "pi2_right_inverse",
                             "n2_annihilation"}) {
      const double r = report.find(name)->residual;
      worst = std::max(worst, r);
      out.require(r < 1e-10, std::string(name) + " residual " + num(r));
    }
    out.require(report.find("rank")->passed, "rank check failed");
    out.require(report.find("kernel_rows_nonzero")->passed, "zero kernel row");
    out.require(report.find("n2_columns_nonzero")->passed, "zero N2 column");
  }
  if (out.passed) out.detail = "50 configs, worst residual " + num(worst);
  return out;
}

// 2. Encoded local runs track plaintext runs exactly.
Outcome immersion_invariance() {
  Outcome out;
  oracle::Gen gen(202);
  const std::vector<OptimizerKind> opts = {Sgd{0.1}, Momentum{0.05, 0.9}, Adam{0.02}};
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool mlp = trial % 2 == 1;
    const Index d = gen.integer(1, 6);
    const ModelSpec model = mlp ? ModelSpec{Mlp{{d, gen.integer(1, 5), 3}}}
                                : ModelSpec{LogisticRegression{d, 2}};
    SyntheticSpec spec;
    spec.samples = gen.integer(5, 60);
    spec.dim = d;
    spec.classes = mlp ? 3 : 2;
    spec.seed = gen.seed();
    const Dataset ds = synth_dataset(spec);
    const Objective obj = model_objective(model, ds);
    const Index n = parameter_count(model);
    KeyGenConfig kc;
    kc.n = n;
    kc.n_tilde = n + gen.integer(1, 16);
    kc.seed = gen.seed();
    const auto keys = gen_server_keys(kc);
    const Vector w0 = gen.vec(n, 0.5);
    const Vector r = gen.vec(keys.kernel_dim(), gen.real(0, 1e3));
    const LocalRunConfig cfg{gen.integer(1, 4), gen.integer(0, spec.samples)};
    const OptimizerKind& opt = opts[static_cast<std::size_t>(trial % 3)];
    const std::uint64_t seed = gen.seed();
    Rng ra(seed), rb(seed);
    auto sa = OptimizerState::make(opt, n);
    auto sb = OptimizerState::make(opt, n);
    const Vector plain = plain_local_run(sa, w0, obj, cfg, ra);
    const auto enc = target_local_run(keys, sb, encode_model(keys, w0, r), obj, cfg, rb);
    const Vector expect = keys.pi1() * plain + keys.n1() * r;
    const double gap = (enc.values - expect).cwiseAbs().maxCoeff();
    worst = std::max(worst, gap);
    out.require(gap < 1e-9, "trial " + std::to_string(trial) + " gap " + num(gap));
  }
  if (out.passed) out.detail = "200 trials, worst gap " + num(worst);
  return out;
}

struct ProtocolRun {
  Dataset train;
  Dataset test;
  TrainingSetup setup;
};

// Train and test rows come from one draw so they share class centers.
void split(const Dataset& all, Index train_rows, ProtocolRun& run) {
  std::vector<Index> head(static_cast<std::size_t>(train_rows));
  std::vector<Index> tail(static_cast<std::size_t>(all.size() - train_rows));
  std::iota(head.begin(), head.end(), Index{0});
  std::iota(tail.begin(), tail.end(), train_rows);
  run.train = all.subset(head);
  run.test = all.subset(tail);
}

TrainingTrace run_mode(ProtocolRun& run, Mode mode) {
  run.setup.train = &run.train;
  run.setup.test = &run.test;
  run.setup.protocol.mode = mode;
  return run_training(run.setup);
}

Outcome compare_modes(ProtocolRun& run, double tol) {
  Outcome out;
  const auto plain = run_mode(run, Mode::plain());
  const auto m1 = run_mode(run, Mode::sifl_m1());
  const auto m2 = run_mode(run, Mode::sifl_m2());
  const double g1 = trace_gap(plain, m1);
  const double g2 = trace_gap(plain, m2);
  out.require(g1 < tol, "sifl-m1 gap " + num(g1));
  out.require(g2 < tol, "sifl-m2 gap " + num(g2));
  out.require(same_accuracy(plain, m1) && same_accuracy(plain, m2), "accuracy sequences differ");
  out.require(plain.rounds.back().test_accuracy > plain.rounds.front().test_accuracy,
              "training did not improve accuracy");
  if (out.passed) {
    out.detail = "gaps m1 " + num(g1) + ", m2 " + num(g2) + ", final accuracy " +
                 num(plain.rounds.back().test_accuracy);
  }
  return out;
}

// 3. Logistic regression: plain, sifl-m1 and sifl-m2 agree per round.
Outcome logistic_equivalence() {
  ProtocolRun run;
  SyntheticSpec spec;
  spec.samples = 2500;
  spec.dim = 10;
  spec.classes = 2;
  spec.separation = 0.5;
  spec.seed = 31;
  split(synth_dataset(spec), 2000, run);
  auto& s = run.setup;
  s.model = LogisticRegression{10, 2};
  s.partition = partition_iid(run.train, 10, 33);
  s.optimizer = Sgd{0.1};
  s.local = LocalRunConfig{2, 50};
  s.protocol.rounds = 20;
  s.protocol.clients = 10;
  s.protocol.noise.sigma1 = s.protocol.noise.sigma2 = 1e3;
  s.protocol.noise_seed = 34;
  s.seed = 35;
  KeyGenConfig kc;
  kc.n = 22;
  kc.n_tilde = 38;
  kc.p = 3;
  kc.seed = 36;
  s.server_keys = gen_server_keys(kc);
  s.aggregator_keys = gen_aggregator_keys(kc);
  return compare_modes(run, 1e-9);
}

// 4. MLP 784-16-10 on a pixel-format CSV, structured keys.
Outcome mlp_equivalence() {
  ProtocolRun run;
  SyntheticSpec spec;
  spec.samples = 1200;
  spec.dim = 784;
  spec.classes = 10;
  spec.separation = 0.3;
  spec.seed = 41;
  const Dataset all = synth_dataset(spec);
  const auto dir = std::filesystem::temp_directory_path() /
                   ("sifl_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const CsvSchema schema{true, 0};  // label first, then 784 pixel columns
  split(all, 1000, run);
  save_csv(dir / "train.csv", run.train, schema);
  save_csv(dir / "test.csv", run.test, schema);
  run.train = load_csv(dir / "train.csv", schema);
  run.test = load_csv(dir / "test.csv", schema);
  std::filesystem::remove_all(dir);

  auto& s = run.setup;
  s.model = Mlp{{784, 16, 10}};
  s.partition = partition_iid(run.train, 10, 42);
  s.optimizer = Sgd{0.5};
  s.local = LocalRunConfig{2, 50};
  s.protocol.rounds = 10;
  s.protocol.clients = 10;
  s.protocol.noise.sigma1 = s.protocol.noise.sigma2 = 1e3;
  s.protocol.noise_seed = 43;
  s.seed = 44;
  KeyGenConfig kc;
  kc.n = parameter_count(s.model);
  kc.n_tilde = kc.n + 16;
  kc.p = 3;
  kc.seed = 45;
  s.server_keys = gen_server_keys(kc);
  s.aggregator_keys = gen_aggregator_keys(kc);
  Outcome out = compare_modes(run, 1e-8);
  out.require(!s.server_keys->is_dense(), "expected structured keys at n=12730");
  return out;
}

// 5. DP numbers in the reference setting: C = 1000, ten clients of 6000.
Outcome dp_numerics() {
  Outcome out;
  NormBounds b;
  b.pi1_l1 = 1e-3;
  b.pi1_l2 = 1e-3;
  b.n1_l2 = 1e3;
  b.pi2_right_l2 = 1e3;
  b.pi2_abs = 1e-3;
  b.pi1_left_l2 = 1e3;
  b.n2_l2 = 1e3;
  b.n2_col_l2 = 1e3;
  const NormProfile p = profile_from_bounds(b);
  const Sensitivity sens = Sensitivity::make(1000, 6000, 60000);
  out.require(std::fabs(sens.local - 1.0 / 3.0) <= 1e-15 / 3.0, "local sensitivity");
  out.require(std::fabs(sens.global - 1.0 / 30.0) <= 1e-15 / 30.0, "global sensitivity");
  const auto e = laplace_eps(p, sens, 1e3, 1e3);
  const double exact = 1e-12 / 3.0;
  out.require(std::fabs(e.eps_local - exact) <= 1e-15 * exact,
              "laplace eps_local " + num(e.eps_local) + " vs (1/3)e-12");
  out.require(e.eps_local <= 1e-12, "laplace eps_local above 1e-12");
  out.require(e.eps_global <= 1e-13, "laplace eps_global " + num(e.eps_global));
  const auto local = gaussian_check(p, sens, 1e3, 1e3, {1e-11, 1e-5, 1e-13, 1e-5});
  out.require(local.local_ok, "gaussian local condition at (1e-11, 1e-5)");
  out.require(local.global_ok, "gaussian global condition at (1e-13, 1e-5)");
  if (out.passed) {
    out.detail = "eps_local " + num(e.eps_local) + ", eps_global " + num(e.eps_global) +
                 ", gaussian margins " + num(local.local_margin) + "/" +
                 num(local.global_margin);
  }
  return out;
}

// 6. Q and its inverse.
Outcome q_machinery() {
  Outcome out;
  out.require(q_function(0.0) == 0.5, "Q(0) != 0.5");
  for (double p : {0.5, 1e-3, 1e-5, 1e-9}) {
    const double rel = std::fabs(q_function(q_inverse(p)) - p) / p;
    out.require(rel <= 1e-12, "round trip at p=" + num(p) + " rel " + num(rel));
  }
  const double ref = oracle::q_inverse(1e-5);
  out.require(std::fabs(ref - 4.26489) < 1e-4, "oracle disagrees with 4.26489");
  out.require(std::fabs(q_inverse(1e-5) - ref) < 1e-4, "Q^-1(1e-5) far from oracle");
  if (out.passed) out.detail = "Q^-1(1e-5) = " + std::to_string(q_inverse(1e-5));
  return out;
}

// 7. Kernel noise never reaches the decoded model but is present on the wire.
Outcome noise_cancellation() {
  Outcome out;
  oracle::Gen gen(707);
  for (int trial = 0; trial < 100 && out.passed; ++trial) {
    const Index d = gen.integer(1, 5);
    const ModelSpec model = LogisticRegression{d, 2};
    const Index n = parameter_count(model);
    const Index clients = gen.integer(1, 5);
    SyntheticSpec spec;
    spec.samples = 10 * clients;
    spec.dim = d;
    spec.seed = gen.seed();
    const Dataset ds = synth_dataset(spec);
    const Partition part = partition_iid(ds, clients, gen.seed());
    std::vector<Dataset> shards;
    for (const auto& rows : part.client_rows) shards.push_back(ds.subset(rows));
    KeyGenConfig kc;
    kc.n = n;
    kc.n_tilde = n + gen.integer(4, 16);
    kc.p = gen.integer(2, 6);
    kc.seed = gen.seed();
    const auto server_keys = gen_server_keys(kc);
    const auto agg_keys = gen_aggregator_keys(kc);
    const double sigma = gen.real(0.5, 100);
    const Vector w0 = gen.vec(n);
    const std::uint64_t batch_seed = gen.seed();
    const NoiseKind kind = trial % 2 ? NoiseKind::kLaplace : NoiseKind::kGaussian;

    // Two rounds under two independent noise draws.
    struct Wire {
      std::vector<Matrix> intermediate;
      Vector decoded;
      Vector final_model;
    };
    auto play = [&](std::uint64_t noise_seed) {
      ProtocolConfig pc;
      pc.mode = Mode::sifl_m2();
      pc.rounds = 2;
      pc.clients = clients;
      pc.noise = {kind, sigma, sigma, std::numeric_limits<double>::infinity()};
      pc.noise_seed = noise_seed;
      ServerRole server(pc, n, server_keys);
      AggregatorRole aggregator(pc, kc.n_tilde, agg_keys);
      std::vector<ClientRole> cs;
      for (Index c = 0; c < clients; ++c) {
        cs.emplace_back(pc, static_cast<std::uint32_t>(c),
                        ClientKeys{server_keys.immersion(), agg_keys.pi2_right()},
                        model_objective(model, shards[static_cast<std::size_t>(c)]),
                        Momentum{0.1, 0.5}, LocalRunConfig{2, 4}, n, batch_seed);
      }
      Wire wire;
      Message msg = server.init(w0);
      for (int round = 0; round < 2; ++round) {
        wire.intermediate.push_back(msg.payload);
        for (auto& c : cs) {
          const Message up = *c.on_broadcast(msg);
          wire.intermediate.push_back(up.payload);
          aggregator.on_update(up);
        }
        const Message agg = aggregator.aggregate();
        if (round == 0) {
          wire.intermediate.push_back(agg.payload);
          wire.decoded = decode_model(server_keys,
                                      decode_aggregate(agg_keys, EncodedMatrixd{agg.payload}));
        }
        msg = server.on_aggregate(agg);
      }
      wire.final_model = msg.vector();
      return wire;
    };
    const Wire a = play(gen.seed());
    const Wire b = play(gen.seed());
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    out.require(oracle::max_abs_diff(a.decoded, b.decoded) < 1e-9,
                tag + "decoded global depends on noise");
    out.require(oracle::max_abs_diff(a.final_model, b.final_model) < 1e-9,
                tag + "final model depends on noise");
    for (std::size_t i = 0; i < a.intermediate.size(); ++i) {
      const double diff = oracle::max_abs_diff(a.intermediate[i], b.intermediate[i]);
      out.require(diff >= sigma / 10,
                  tag + "message " + std::to_string(i) + " differs by only " + num(diff));
    }
  }
  if (out.passed) out.detail = "100 rounds, decoded models noise-free, wire messages masked";
  return out;
}

// 8. Histogram test of the calibrated Gaussian release of one encoded element.
Outcome empirical_dp() {
  Outcome out;
  const double eps = 1.0, delta = 1e-3;
  KeyGenConfig kc;
  kc.n = 1;
  kc.n_tilde = 3;
  kc.seed = 808;
  const auto keys = gen_server_keys(kc);
  const NormProfile profile = norm_profile(keys);
  const double clip = 1.0;
  const Index size = 100;
  const Sensitivity sens = Sensitivity::make(clip, size, size);
  const SigmaSolution sol = gaussian_solve_sigma(profile, sens, {eps, delta, eps, delta});

  // Adjacent datasets shift the clipped mean query by exactly the sensitivity.
  const Vector w_d = Vector::Zero(1);
  const Vector w_dp = Vector::Constant(1, sens.local);
  const Index samples = 100000;
  const double bound = std::exp(eps) * 1.1;

  // Worst mass, over rows and both directions, of bins whose likelihood
  // ratio exceeds bound.
  auto worst_violation = [&](double sigma, std::uint64_t seed) {
    Rng rng(seed);
    auto release = [&](const Vector& w) {
      Matrix out(samples, kc.n_tilde);
      for (Index s = 0; s < samples; ++s) {
        const Vector r = sample_gaussian(kc.n_tilde - kc.n, 1, sigma, rng);
        out.row(s) = encode_model(keys, w, r).values.transpose();
      }
      return out;
    };
    const Matrix a = release(w_d);
    const Matrix b = release(w_dp);
    double worst = 0;
    for (Index j = 0; j < kc.n_tilde; ++j) {
      // Equal-count bins on the pooled sample keep every ratio well
      // estimated, tails included.
      std::vector<double> pooled(static_cast<std::size_t>(2 * samples));
      for (Index s = 0; s < samples; ++s) {
        pooled[static_cast<std::size_t>(s)] = a(s, j);
        pooled[static_cast<std::size_t>(samples + s)] = b(s, j);
      }
      std::sort(pooled.begin(), pooled.end());
      const int bins = 200;
      std::vector<double> edges;
      for (int k = 1; k < bins; ++k) {
        edges.push_back(pooled[pooled.size() * static_cast<std::size_t>(k) / bins]);
      }
      std::vector<double> ha(bins, 0), hb(bins, 0);
      auto bin = [&](double x) {
        return static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) -
                                        edges.begin());
      };
      for (Index s = 0; s < samples; ++s) {
        ha[bin(a(s, j))] += 1.0 / samples;
        hb[bin(b(s, j))] += 1.0 / samples;
      }
      double viol_ab = 0, viol_ba = 0;
      for (std::size_t k = 0; k < ha.size(); ++k) {
        if (ha[k] > bound * hb[k]) viol_ab += ha[k];
        if (hb[k] > bound * ha[k]) viol_ba += hb[k];
      }
      worst = std::max({worst, viol_ab, viol_ba});
    }
    return worst;
  };

  const double calibrated = worst_violation(sol.sigma1, 809);
  out.require(calibrated <= 1.5 * delta, "violating mass " + num(calibrated) + " at sigma1");
  // Negative control: a quarter of the calibrated noise must be caught.
  const double weak = worst_violation(sol.sigma1 / 4, 810);
  out.require(weak > 1.5 * delta, "sigma1/4 not detected, violating mass " + num(weak));
  if (out.passed) {
    out.detail = "sigma1 " + num(sol.sigma1) + ", violating mass " + num(calibrated) +
                 ", at sigma1/4 " + num(weak);
  }
  return out;
}

// 9. Every delivered frame matches the receiving role's allowed set.
Outcome trust_boundary() {
  Outcome out;
  SyntheticSpec spec;
  spec.samples = 200;
  spec.dim = 3;
  spec.seed = 91;
  const Dataset ds = synth_dataset(spec);
  const ModelSpec model = LogisticRegression{3, 2};
  const Index n = parameter_count(model);
  KeyGenConfig kc;
  kc.n = n;
  kc.n_tilde = n + 5;
  kc.p = 4;
  kc.seed = 92;
  std::size_t frames = 0;
  for (const Mode mode : {Mode::sifl_m1(), Mode::sifl_m2()}) {
    TrainingSetup s;
    s.model = model;
    s.train = &ds;
    s.partition = partition_iid(ds, 4, 93);
    s.local = LocalRunConfig{2, 10};
    s.protocol.mode = mode;
    s.protocol.rounds = 5;
    s.protocol.clients = 4;
    s.seed = 94;
    s.server_keys = gen_server_keys(kc);
    s.aggregator_keys = gen_aggregator_keys(kc);
    const bool m2 = mode.kind == ModeKind::kSiflM2;
    InProcessTransport inner;
    TapTransport tap(inner, [&](const Address& at, const Envelope& env) {
      ++frames;
      const Message m = deserialize(env.frame);
      const std::string where = to_string(mode) + " " + to_string(at) + " round " +
                                std::to_string(m.round) + ": " + to_string(m.tag) + " " +
                                std::to_string(m.payload.rows()) + "x" +
                                std::to_string(m.payload.cols());
      out.require(m.payload.rows() != n, where + " carries an n-row payload");
      switch (at.role) {
        case RoleKind::kServer: {
          out.require(m.tag == MessageTag::kAggregateToServer, where);
          const bool last = static_cast<Index>(m.round) == s.protocol.rounds - 1;
          const Index cols = m2 && !last ? kc.p : 1;
          out.require(m.payload.rows() == kc.n_tilde && m.payload.cols() == cols, where);
          break;
        }
        case RoleKind::kAggregator:
          out.require(m.tag == MessageTag::kLocalUpdate, where);
          out.require(m.payload.rows() == kc.n_tilde && m.payload.cols() == 1, where);
          break;
        case RoleKind::kClient: {
          const bool doubly = m2 && m.round > 0;
          out.require(m.tag == (doubly ? MessageTag::kBroadcastDoublyEncoded
                                       : MessageTag::kBroadcastEncoded),
                      where);
          out.require(m.payload.rows() == kc.n_tilde &&
                          m.payload.cols() == (doubly ? kc.p : 1),
                      where);
          break;
        }
      }
    });
    run_training(s, tap);
  }
  // Per mode and round: 4 broadcasts, 4 uploads, 1 aggregate.
  out.require(frames == 2 * 5 * 9, "saw " + std::to_string(frames) + " frames, expected 90");
  if (out.passed) out.detail = std::to_string(frames) + " frames checked";
  return out;
}

// 10. Golden wire fixtures.
Outcome golden_fixtures() {
  Outcome out;
  for (const auto& [name, msg] : golden::messages()) {
    const auto fixture = golden::read_fixture(name);
    out.require(!fixture.empty(), "missing fixture " + name);
    out.require(serialize(msg) == fixture, name + ": serialized bytes differ");
    if (!out.passed) break;
    const Message back = deserialize(fixture);
    out.require(back == msg, name + ": decoded message differs");
    out.require(serialize(back) == fixture, name + ": re-serialized bytes differ");
  }
  if (out.passed) out.detail = std::to_string(golden::messages().size()) + " tags byte-identical";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace sifl

int main() {
  using namespace sifl;
  const std::vector<Criterion> criteria = {
      {1, "key algebra", 10, key_algebra},
      {2, "immersion invariance", 30, immersion_invariance},
      {3, "logistic protocol equivalence", 60, logistic_equivalence},
      {4, "mlp protocol equivalence", 300, mlp_equivalence},
      {5, "dp numerics", 1, dp_numerics},
      {6, "q machinery", 1, q_machinery},
      {7, "noise cancellation", 30, noise_cancellation},
      {8, "empirical dp", 120, empirical_dp},
      {9, "trust boundary taps", 60, trust_boundary},
      {10, "golden wire fixtures", 5, golden_fixtures},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.passed && secs > c.budget_s) {
      o = {false, "took " + num(secs) + " s, budget " + num(c.budget_s) + " s"};
    }
    if (!o.passed) ++failures;
    std::printf("%s [%2d] %-30s %7.2f s  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

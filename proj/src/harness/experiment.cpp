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

#include "sifl/harness/experiment.hpp"

#include <cmath>
#include <fstream>
#include <memory>

#include "sifl/coding/keyfile.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/dp/calculus.hpp"
#include "sifl/fl/tcp_transport.hpp"

namespace sifl {

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double from_json_number(const nlohmann::json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

void check_data(const ExperimentConfig& cfg, const Dataset& ds, const char* which) {
  try {
    ds.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string(which) + " data: " + e.what());
  }
  if (ds.dim() != input_dim(cfg.model)) {
    throw ConfigError(std::string(which) + " data has " + std::to_string(ds.dim()) +
                      " features, model " + describe(cfg.model) + " expects " +
                      std::to_string(input_dim(cfg.model)));
  }
}

std::unique_ptr<Transport> make_transport(const ExperimentConfig& cfg) {
  if (cfg.transport == TransportKind::kInProcess) return std::make_unique<InProcessTransport>();
  std::vector<Address> endpoints{Address::server(), Address::aggregator()};
  for (Index c = 0; c < cfg.clients; ++c) {
    endpoints.push_back(Address::client(static_cast<std::uint32_t>(c)));
  }
  return std::make_unique<TcpTransport>(endpoints);
}

}  // namespace

ExperimentData load_data(const ExperimentConfig& cfg) {
  ExperimentData out;
  if (cfg.data.source == DataSource::kSynthetic) {
    SyntheticSpec spec = cfg.data.synthetic;
    spec.dim = input_dim(cfg.model);
    spec.samples = cfg.data.synthetic.samples + cfg.data.test_samples;
    Dataset all = synth_dataset(spec);
    std::vector<Index> train_rows(static_cast<std::size_t>(cfg.data.synthetic.samples));
    for (Index i = 0; i < cfg.data.synthetic.samples; ++i) train_rows[static_cast<std::size_t>(i)] = i;
    out.train = all.subset(train_rows);
    if (cfg.data.test_samples > 0) {
      std::vector<Index> test_rows;
      for (Index i = cfg.data.synthetic.samples; i < spec.samples; ++i) test_rows.push_back(i);
      out.test = all.subset(test_rows);
    }
  } else {
    try {
      out.train = load_csv(cfg.data.path, cfg.data.schema);
      if (!cfg.data.test_path.empty()) out.test = load_csv(cfg.data.test_path, cfg.data.schema);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("csv: ") + e.what());
    } catch (const IoError& e) {
      throw ConfigError(e.what());
    }
  }
  check_data(cfg, out.train, "training");
  if (out.test) check_data(cfg, *out.test, "test");
  if (out.train.size() < cfg.clients) {
    throw ConfigError("training data has " + std::to_string(out.train.size()) +
                      " rows for " + std::to_string(cfg.clients) + " clients");
  }
  return out;
}

ExperimentKeys make_keys(const ExperimentConfig& cfg) {
  ExperimentKeys keys;
  if (!cfg.key_file.empty()) {
    KeyBundle bundle = [&] {
      try {
        return load_keys(cfg.key_file);
      } catch (const Error& e) {
        throw ConfigError("key file " + cfg.key_file.string() + ": " + e.what());
      }
    }();
    if (bundle.server.n() != cfg.n() || bundle.server.n_tilde() != cfg.n_tilde() ||
        bundle.aggregator.p() != cfg.keys.p) {
      throw ConfigError("key file has (n, n_tilde, p) = (" + std::to_string(bundle.server.n()) +
                        ", " + std::to_string(bundle.server.n_tilde()) + ", " +
                        std::to_string(bundle.aggregator.p()) + "), config needs (" +
                        std::to_string(cfg.n()) + ", " + std::to_string(cfg.n_tilde()) + ", " +
                        std::to_string(cfg.keys.p) + ")");
    }
    keys.server = std::move(bundle.server);
    keys.aggregator = std::move(bundle.aggregator);
    return keys;
  }
  const KeyGenConfig kc = cfg.key_gen_config();
  keys.server = gen_server_keys(kc);
  keys.aggregator = gen_aggregator_keys(kc);
  return keys;
}

PrivacyReport experiment_privacy_report(const ExperimentConfig& cfg, const ExperimentKeys& keys,
                                        const Partition& partition) {
  if (!keys.server) throw ConfigError("privacy report needs server keys");
  const bool with_aggregator = cfg.has_mode(ModeKind::kSiflM2) || !cfg.has_mode(ModeKind::kSiflM1);
  const NormProfile profile = with_aggregator && keys.aggregator
                                  ? norm_profile(*keys.server, *keys.aggregator)
                                  : norm_profile(*keys.server);
  const Index local = *std::max_element(partition.sizes.begin(), partition.sizes.end());
  return privacy_report(profile, local, partition.total, cfg.privacy);
}

nlohmann::json MetricsRecord::to_json(bool with_timing) const {
  nlohmann::json j{
      {"mode", to_string(mode)},
      {"round", round},
      {"train_loss", number_or_null(train_loss)},
      {"test_accuracy", number_or_null(test_accuracy)},
      {"n", n},
      {"n_tilde", n_tilde},
      {"p", p},
  };
  if (with_timing) {
    j["timing"] = {{"local_s", times.local},
                   {"aggregate_s", times.aggregate},
                   {"coding_s", times.coding},
                   {"wall_s", wall_seconds}};
  }
  if (privacy) j["privacy"] = privacy->to_json();
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const ExperimentData data = load_data(cfg);
  const Partition partition = partition_iid(data.train, cfg.clients, cfg.seed);

  ExperimentResult result;
  ExperimentKeys keys;
  NoiseSpec noise{cfg.privacy.noise, cfg.privacy.sigma1, cfg.privacy.sigma2, cfg.privacy.clip};
  if (cfg.needs_keys()) {
    keys = make_keys(cfg);
    result.privacy = experiment_privacy_report(cfg, keys, partition);
    noise.sigma1 = result.privacy->sigma1;
    noise.sigma2 = result.privacy->sigma2;
  }

  for (const Mode& mode : cfg.modes) {
    TrainingSetup setup;
    setup.model = cfg.model;
    setup.train = &data.train;
    setup.test = data.test ? &*data.test : nullptr;
    setup.partition = partition;
    setup.optimizer = cfg.optimizer;
    setup.local.local_steps = cfg.local_steps;
    setup.local.batch_size = cfg.batch_size;
    setup.local.clip = cfg.privacy.clip;
    setup.protocol.mode = mode;
    setup.protocol.rounds = cfg.rounds;
    setup.protocol.clients = cfg.clients;
    setup.protocol.noise = noise;
    setup.protocol.noise_seed = cfg.noise_seed;
    setup.seed = cfg.seed;
    if (mode.encoded()) {
      setup.server_keys = keys.server;
      if (mode.kind == ModeKind::kSiflM2) setup.aggregator_keys = keys.aggregator;
    }
    auto transport = make_transport(cfg);
    TrainingTrace trace = run_training(setup, *transport);

    for (const RoundRecord& r : trace.rounds) {
      MetricsRecord rec;
      rec.round = r.round;
      rec.mode = mode;
      rec.train_loss = r.train_loss;
      rec.test_accuracy = r.test_accuracy;
      rec.times = r.times;
      rec.wall_seconds = r.wall_seconds;
      rec.n = trace.n;
      rec.n_tilde = trace.n_tilde;
      rec.p = trace.p;
      if (mode.encoded() && r.round == cfg.rounds) rec.privacy = result.privacy;
      if (options.jsonl) *options.jsonl << rec.to_json(options.timing).dump() << '\n';
      result.records.push_back(std::move(rec));
    }
    if (!options.trace_dir.empty()) {
      std::filesystem::create_directories(options.trace_dir);
      save_trace(options.trace_dir / (to_string(mode) + ".trace.jsonl"), trace);
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

void write_trace(std::ostream& out, const TrainingTrace& trace) {
  out << nlohmann::json{{"mode", to_string(trace.mode)},
                        {"n", trace.n},
                        {"n_tilde", trace.n_tilde},
                        {"p", trace.p}}
             .dump()
      << '\n';
  for (const RoundRecord& r : trace.rounds) {
    std::vector<double> params(r.global.data(), r.global.data() + r.global.size());
    out << nlohmann::json{{"round", r.round},
                          {"train_loss", number_or_null(r.train_loss)},
                          {"test_accuracy", number_or_null(r.test_accuracy)},
                          {"params", params}}
               .dump()
        << '\n';
  }
  if (!out) throw IoError("write_trace: stream write failed");
}

void save_trace(const std::filesystem::path& path, const TrainingTrace& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_trace(out, trace);
}

TrainingTrace read_trace(std::istream& in) {
  TrainingTrace trace;
  std::string line;
  std::size_t lineno = 0;
  try {
    if (!std::getline(in, line)) throw FormatError("trace: empty input");
    ++lineno;
    const auto head = nlohmann::json::parse(line);
    trace.mode = parse_mode(head.at("mode").get<std::string>());
    trace.n = head.at("n").get<Index>();
    trace.n_tilde = head.at("n_tilde").get<Index>();
    trace.p = head.at("p").get<Index>();
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      RoundRecord r;
      r.round = j.at("round").get<Index>();
      r.train_loss = from_json_number(j.at("train_loss"));
      r.test_accuracy = from_json_number(j.at("test_accuracy"));
      const auto params = j.at("params").get<std::vector<double>>();
      r.global = Eigen::Map<const Vector>(params.data(), static_cast<Index>(params.size()));
      trace.rounds.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("trace line " + std::to_string(lineno) + ": " + e.what());
  } catch (const InvalidArgs& e) {
    throw FormatError("trace line " + std::to_string(lineno) + ": " + e.what());
  }
  if (!trace.rounds.empty()) trace.final_model = trace.rounds.back().global;
  return trace;
}

TrainingTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace " + path.string());
  return read_trace(in);
}

}  // namespace sifl

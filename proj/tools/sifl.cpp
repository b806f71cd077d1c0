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

// Command-line front end. Exit codes: 0 pass, 1 validation or equivalence
// failure (and runtime errors), 2 configuration or usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sifl/coding/keyfile.hpp"
#include "sifl/coding/validate.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/harness/config.hpp"
#include "sifl/harness/equivalence.hpp"
#include "sifl/harness/experiment.hpp"
#include "sifl/harness/timing.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

int cmd_run(const std::string& config, const std::string& out_path, const std::string& trace_dir,
            const std::string& timing_csv, bool no_timing) {
  const sifl::ExperimentConfig cfg = sifl::load_config(config);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw sifl::ConfigError("cannot open " + out_path + " for writing");
    out = &file;
  }
  sifl::RunOptions options;
  options.jsonl = out;
  options.timing = !no_timing;
  options.trace_dir = trace_dir;
  const sifl::ExperimentResult result = sifl::run_experiment(cfg, options);
  if (!timing_csv.empty()) {
    std::ofstream csv(timing_csv);
    if (!csv) throw sifl::ConfigError("cannot open " + timing_csv + " for writing");
    sifl::write_timing_csv(csv, sifl::timing_rows(result));
  }
  return kPass;
}

int cmd_validate_keys(const std::string& keyfile) {
  std::ifstream in(keyfile, std::ios::binary);
  if (!in) throw sifl::ConfigError("cannot open key file " + keyfile);
  sifl::KeyBundle bundle = [&] {
    try {
      return sifl::read_keys(in, /*revalidate=*/false);
    } catch (const sifl::Error& e) {
      std::cout << "format=invalid\ndetail=" << e.what() << "\nresult=fail\n";
      throw;
    }
  }();
  const auto report = sifl::validate_keys(bundle.server, bundle.aggregator);
  std::cout << "n=" << bundle.server.n() << "\nn_tilde=" << bundle.server.n_tilde()
            << "\np=" << bundle.aggregator.p() << '\n'
            << report.to_text() << "result=" << (report.passed() ? "pass" : "fail") << '\n';
  return report.passed() ? kPass : kFail;
}

int cmd_dp_report(const std::string& config) {
  const sifl::ExperimentConfig cfg = sifl::load_config(config);
  const sifl::ExperimentData data = sifl::load_data(cfg);
  const sifl::Partition partition = sifl::partition_iid(data.train, cfg.clients, cfg.seed);
  const sifl::ExperimentKeys keys = sifl::make_keys(cfg);
  const sifl::PrivacyReport report = sifl::experiment_privacy_report(cfg, keys, partition);
  std::cout << report.to_text();
  const bool ok = report.bounded && report.local_ok && report.global_ok;
  std::cout << "result=" << (ok ? "pass" : "fail") << '\n';
  return ok ? kPass : kFail;
}

int cmd_gen_keys(const std::string& config, const std::string& out) {
  const sifl::ExperimentConfig cfg = sifl::load_config(config);
  const sifl::KeyGenConfig kc = cfg.key_gen_config();
  if (!kc.dense()) {
    throw sifl::ConfigError("key files hold dense keys only; n=" + std::to_string(kc.n) +
                            " selects structured keys (set [keys] layout = dense)");
  }
  const auto server = sifl::gen_server_keys(kc);
  const auto agg = sifl::gen_aggregator_keys(kc);
  sifl::save_keys(out, server, agg);
  std::cout << "wrote " << out << " (n=" << kc.n << ", n_tilde=" << kc.n_tilde
            << ", p=" << kc.p << ")\n";
  return kPass;
}

int cmd_equivalence(const std::string& a, const std::string& b, double tol) {
  const sifl::TrainingTrace ta = sifl::load_trace(a);
  const sifl::TrainingTrace tb = sifl::load_trace(b);
  const sifl::EquivalenceReport report = sifl::equivalence_report(ta, tb, tol);
  std::cout << report.to_text();
  return report.passed ? kPass : kFail;
}

int cmd_timing(const std::string& config, const std::vector<sifl::Index>& sizes,
               const std::string& out_path) {
  const sifl::ExperimentConfig cfg = sifl::load_config(config);
  const auto rows = sizes.empty() ? sifl::timing_rows(sifl::run_experiment(cfg))
                                  : sifl::timing_sweep(cfg, sizes);
  if (out_path.empty()) {
    sifl::write_timing_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw sifl::ConfigError("cannot open " + out_path + " for writing");
    sifl::write_timing_csv(out, rows);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Immersion-coded federated learning harness"};
  app.require_subcommand(1);

  std::string config, out, trace_dir, timing_csv, keyfile, trace_a, trace_b;
  bool no_timing = false;
  double tol = 1e-9;
  std::vector<sifl::Index> sizes;

  auto* run = app.add_subcommand("run", "Train every configured mode and emit JSONL metrics");
  run->add_option("config", config, "Experiment config (INI)")->required();
  run->add_option("-o,--out", out, "Metrics JSONL path (default stdout)");
  run->add_option("--trace-dir", trace_dir, "Write one parameter trace per mode here");
  run->add_option("--timing-csv", timing_csv, "Write per-phase timings as CSV");
  run->add_flag("--no-timing", no_timing, "Omit wall-clock fields for byte-stable output");

  auto* validate = app.add_subcommand("validate-keys", "Check every key invariant");
  validate->add_option("keyfile", keyfile, "Binary key file")->required();

  auto* dp = app.add_subcommand("dp-report", "Evaluate the privacy conditions for a config");
  dp->add_option("config", config, "Experiment config (INI)")->required();

  auto* eq = app.add_subcommand("equivalence", "Compare two parameter traces round by round");
  eq->add_option("trace_a", trace_a, "First trace")->required();
  eq->add_option("trace_b", trace_b, "Second trace")->required();
  eq->add_option("--tol", tol, "Max-abs tolerance")->capture_default_str();

  auto* gen = app.add_subcommand("gen-keys", "Generate dense keys for a config");
  gen->add_option("config", config, "Experiment config (INI)")->required();
  gen->add_option("-o,--out", out, "Output key file")->required();

  auto* timing = app.add_subcommand("timing", "Per-phase wall-clock table as CSV");
  timing->add_option("config", config, "Experiment config (INI)")->required();
  timing->add_option("--sizes", sizes, "Sweep a linear model over these n")->delimiter(',');
  timing->add_option("-o,--out", out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (*run) return cmd_run(config, out, trace_dir, timing_csv, no_timing);
    if (*validate) return cmd_validate_keys(keyfile);
    if (*dp) return cmd_dp_report(config);
    if (*eq) return cmd_equivalence(trace_a, trace_b, tol);
    if (*gen) return cmd_gen_keys(config, out);
    if (*timing) return cmd_timing(config, sizes, out);
  } catch (const sifl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const sifl::KeyMismatch& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kConfigError;
}

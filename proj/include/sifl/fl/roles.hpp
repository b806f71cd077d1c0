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

#ifndef SIFL_FL_ROLES_HPP_
#define SIFL_FL_ROLES_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "sifl/coding/keys.hpp"
#include "sifl/core/types.hpp"
#include "sifl/dp/samplers.hpp"
#include "sifl/fl/messages.hpp"
#include "sifl/optim/local_run.hpp"
#include "sifl/optim/optimizer.hpp"

namespace sifl {

enum class ModeKind { kPlain, kSiflM1, kSiflM2, kNoisyBaseline };

struct Mode {
  ModeKind kind = ModeKind::kPlain;
  double baseline_sigma = 0;  // kNoisyBaseline only

  static Mode plain() { return {ModeKind::kPlain, 0}; }
  static Mode sifl_m1() { return {ModeKind::kSiflM1, 0}; }
  static Mode sifl_m2() { return {ModeKind::kSiflM2, 0}; }
  static Mode noisy_baseline(double sigma) { return {ModeKind::kNoisyBaseline, sigma}; }

  bool encoded() const { return kind == ModeKind::kSiflM1 || kind == ModeKind::kSiflM2; }
  bool operator==(const Mode&) const = default;
};

// "plain", "sifl-m1", "sifl-m2", "baseline"
std::string to_string(const Mode& mode);
Mode parse_mode(const std::string& text, double baseline_sigma = 1.0);  // throws InvalidArgs

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;
  double sigma1 = 1.0;  // server kernel noise R1 / r1
  double sigma2 = 1.0;  // aggregator kernel noise R2
  // Clip applied by baseline clients before noising.
  double baseline_clip = std::numeric_limits<double>::infinity();
};

struct ProtocolConfig {
  Mode mode;
  Index rounds = 1;   // T
  Index clients = 1;  // N_c
  NoiseSpec noise;
  std::uint64_t noise_seed = 0;

  void validate() const;  // throws InvalidArgs
};

// Wall-clock seconds per phase, accumulated by a role.
struct PhaseTimes {
  double local = 0;
  double aggregate = 0;
  double coding = 0;

  PhaseTimes& operator+=(const PhaseTimes& o) {
    local += o.local;
    aggregate += o.aggregate;
    coding += o.coding;
    return *this;
  }
};

// Holds ServerKeys only. In SiflM2 it never sees a plaintext model before
// the final round: it only applies Pi1^L to pi2-masked matrices.
class ServerRole {
 public:
  // Keys are required in encoded modes; their n must match.
  ServerRole(const ProtocolConfig& cfg, Index n, std::optional<ServerKeysd> keys);

  // First broadcast, or Done when T = 0.
  Message init(const Vector& w0);
  // Next broadcast, or Done after the aggregate of round T - 1.
  Message on_aggregate(const Message& msg);

  bool finished() const { return finished_; }
  Index round() const { return round_; }
  const PhaseTimes& times() const { return times_; }

 private:
  Message broadcast(Index round, const Vector& w);
  Rng noise_rng(Index round) const;

  ProtocolConfig cfg_;
  Index n_;
  std::optional<ServerKeysd> keys_;
  Index round_ = 0;
  bool started_ = false;
  bool finished_ = false;
  PhaseTimes times_;
};

// Holds AggregatorKeys only.
class AggregatorRole {
 public:
  // `rows` is the expected update length: n in plain modes, n_tilde otherwise.
  AggregatorRole(const ProtocolConfig& cfg, Index rows, std::optional<AggregatorKeysd> keys);

  // Throws ProtocolOrderError, DuplicateClient, ShapeMismatch.
  void on_update(const Message& msg);
  bool ready() const;
  // Weighted average with c_i = |D_i| / sum |D_j|, masked by pi2 in SiflM2
  // before the last round. Throws MissingClient.
  Message aggregate();

  Index round() const { return round_; }
  const PhaseTimes& times() const { return times_; }

 private:
  ProtocolConfig cfg_;
  Index rows_;
  std::optional<AggregatorKeysd> keys_;
  Index round_ = 0;
  std::map<std::uint32_t, Message> pending_;
  PhaseTimes times_;
};

// Key material a client may hold: the immersion (inside f~) and Pi2^R.
struct ClientKeys {
  std::optional<Immersiond> immersion;
  std::optional<Vector> pi2_right;
};

class ClientRole {
 public:
  ClientRole(const ProtocolConfig& cfg, std::uint32_t id, ClientKeys keys, Objective objective,
             const OptimizerKind& optimizer, const LocalRunConfig& local, Index n,
             std::uint64_t batch_seed);

  // LocalUpdate for a broadcast; std::nullopt for Done.
  // Throws ProtocolOrderError (wrong round or tag), ShapeMismatch.
  std::optional<Message> on_broadcast(const Message& msg);

  std::uint32_t id() const { return id_; }
  Index round() const { return round_; }
  const std::optional<Vector>& final_model() const { return final_; }
  const PhaseTimes& times() const { return times_; }

 private:
  MessageTag expected_tag() const;

  ProtocolConfig cfg_;
  std::uint32_t id_;
  ClientKeys keys_;
  Objective objective_;
  OptimizerState state_;
  LocalRunConfig local_;
  Index n_;
  std::uint64_t batch_seed_;
  Index round_ = 0;
  std::optional<Vector> final_;
  PhaseTimes times_;
};

}  // namespace sifl

#endif  // SIFL_FL_ROLES_HPP_

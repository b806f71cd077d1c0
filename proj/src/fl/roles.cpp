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

#include "sifl/fl/roles.hpp"

#include <cmath>

#include "sifl/coding/codec.hpp"
#include "sifl/core/errors.hpp"

namespace sifl {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

void require_shape(const Message& msg, Index rows, Index cols) {
  if (msg.payload.rows() != rows || msg.payload.cols() != cols) {
    throw ShapeMismatch(to_string(msg.tag) + " payload is " + std::to_string(msg.payload.rows()) +
                        "x" + std::to_string(msg.payload.cols()) + ", expected " +
                        std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_round(const Message& msg, Index expected, const char* who) {
  if (static_cast<Index>(msg.round) != expected) {
    throw ProtocolOrderError(std::string(who) + ": " + to_string(msg.tag) + " for round " +
                             std::to_string(msg.round) + " while in round " +
                             std::to_string(expected));
  }
}

}  // namespace

std::string to_string(const Mode& mode) {
  switch (mode.kind) {
    case ModeKind::kPlain:
      return "plain";
    case ModeKind::kSiflM1:
      return "sifl-m1";
    case ModeKind::kSiflM2:
      return "sifl-m2";
    case ModeKind::kNoisyBaseline:
      return "baseline";
  }
  return "unknown";
}

Mode parse_mode(const std::string& text, double baseline_sigma) {
  if (text == "plain") return Mode::plain();
  if (text == "sifl-m1") return Mode::sifl_m1();
  if (text == "sifl-m2") return Mode::sifl_m2();
  if (text == "baseline") return Mode::noisy_baseline(baseline_sigma);
  throw InvalidArgs("unknown mode '" + text + "' (expected plain, sifl-m1, sifl-m2, baseline)");
}

void ProtocolConfig::validate() const {
  if (rounds < 0) throw InvalidArgs("rounds must be >= 0");
  if (clients < 1) throw InvalidArgs("clients must be >= 1");
  if (mode.encoded() && (!(noise.sigma1 > 0.0) || !(noise.sigma2 > 0.0))) {
    throw InvalidArgs("kernel noise sigmas must be positive");
  }
  if (mode.kind == ModeKind::kNoisyBaseline && !(mode.baseline_sigma > 0.0)) {
    throw InvalidArgs("baseline sigma must be positive");
  }
}

// ---- server ----

ServerRole::ServerRole(const ProtocolConfig& cfg, Index n, std::optional<ServerKeysd> keys)
    : cfg_(cfg), n_(n), keys_(std::move(keys)) {
  cfg_.validate();
  if (cfg_.mode.encoded()) {
    if (!keys_) throw KeyMismatch("server: encoded modes need server keys");
    if (keys_->n() != n_) {
      throw KeyMismatch("server: keys have n=" + std::to_string(keys_->n()) + ", model has n=" +
                        std::to_string(n_));
    }
  }
}

Rng ServerRole::noise_rng(Index round) const {
  return Rng(derive_seed(cfg_.noise_seed, Stream::kServerNoise, static_cast<std::uint64_t>(round)));
}

Message ServerRole::broadcast(Index round, const Vector& w) {
  const auto r = static_cast<std::uint32_t>(round);
  if (!cfg_.mode.encoded()) return Message::broadcast_plain(r, w);
  Stopwatch sw(times_.coding);
  Rng rng = noise_rng(round);
  const Vector r1 = sample_noise(cfg_.noise.kind, keys_->kernel_dim(), 1, cfg_.noise.sigma1, rng);
  return Message::broadcast_encoded(r, encode_model(*keys_, w, r1).values);
}

Message ServerRole::init(const Vector& w0) {
  if (started_) throw ProtocolOrderError("server: init called twice");
  if (w0.size() != n_) throw ShapeMismatch("server: initial model has the wrong length");
  started_ = true;
  if (cfg_.rounds == 0) {
    finished_ = true;
    return Message::done(0, w0);
  }
  return broadcast(0, w0);
}

Message ServerRole::on_aggregate(const Message& msg) {
  if (!started_ || finished_) throw ProtocolOrderError("server: aggregate outside training");
  if (msg.tag != MessageTag::kAggregateToServer) {
    throw ProtocolOrderError("server: unexpected " + to_string(msg.tag));
  }
  require_round(msg, round_, "server");
  const Index next = round_ + 1;
  const bool last = next == cfg_.rounds;
  round_ = next;
  if (last) finished_ = true;

  if (!cfg_.mode.encoded()) {
    require_shape(msg, n_, 1);
    const Vector w = msg.vector();
    return last ? Message::done(static_cast<std::uint32_t>(next), w) : broadcast(next, w);
  }
  const Index nt = keys_->n_tilde();
  if (cfg_.mode.kind == ModeKind::kSiflM1 || last) {
    require_shape(msg, nt, 1);
    Vector w;
    {
      Stopwatch sw(times_.coding);
      w = decode_model(*keys_, EncodedVectord{msg.vector()});
    }
    return last ? Message::done(static_cast<std::uint32_t>(next), w) : broadcast(next, w);
  }
  // SiflM2, intermediate round: w_bar = Pi1^L W' stays pi2-masked.
  if (msg.payload.rows() != nt || msg.payload.cols() < 2) {
    throw ShapeMismatch("server: expected an n_tilde x p aggregate, got " +
                        std::to_string(msg.payload.rows()) + "x" +
                        std::to_string(msg.payload.cols()));
  }
  Stopwatch sw(times_.coding);
  const Matrix w_bar = decode_model(*keys_, EncodedMatrixd{msg.payload});
  Rng rng = noise_rng(next);
  const Matrix r1 =
      sample_noise(cfg_.noise.kind, keys_->kernel_dim(), w_bar.cols(), cfg_.noise.sigma1, rng);
  return Message::broadcast_doubly_encoded(static_cast<std::uint32_t>(next),
                                           encode_model_matrix(*keys_, w_bar, r1).values);
}

// ---- aggregator ----

AggregatorRole::AggregatorRole(const ProtocolConfig& cfg, Index rows,
                               std::optional<AggregatorKeysd> keys)
    : cfg_(cfg), rows_(rows), keys_(std::move(keys)) {
  cfg_.validate();
  if (cfg_.mode.kind == ModeKind::kSiflM2 && !keys_) {
    throw KeyMismatch("aggregator: sifl-m2 needs aggregator keys");
  }
}

void AggregatorRole::on_update(const Message& msg) {
  if (msg.tag != MessageTag::kLocalUpdate) {
    throw ProtocolOrderError("aggregator: unexpected " + to_string(msg.tag));
  }
  require_round(msg, round_, "aggregator");
  if (static_cast<Index>(msg.client_id) >= cfg_.clients) {
    throw ProtocolOrderError("aggregator: unknown client " + std::to_string(msg.client_id));
  }
  if (pending_.count(msg.client_id)) {
    throw DuplicateClient("aggregator: second update from client " +
                          std::to_string(msg.client_id) + " in round " +
                          std::to_string(round_));
  }
  require_shape(msg, rows_, 1);
  if (msg.dataset_size == 0) throw ShapeMismatch("aggregator: update reports an empty dataset");
  pending_.emplace(msg.client_id, msg);
}

bool AggregatorRole::ready() const { return static_cast<Index>(pending_.size()) == cfg_.clients; }

Message AggregatorRole::aggregate() {
  if (!ready()) {
    for (Index c = 0; c < cfg_.clients; ++c) {
      if (!pending_.count(static_cast<std::uint32_t>(c))) {
        throw MissingClient("aggregator: no update from client " + std::to_string(c) +
                            " in round " + std::to_string(round_));
      }
    }
  }
  Vector avg = Vector::Zero(rows_);
  {
    Stopwatch sw(times_.aggregate);
    std::uint64_t total = 0;
    for (const auto& [id, m] : pending_) total += m.dataset_size;
    for (const auto& [id, m] : pending_) {
      const double c = static_cast<double>(m.dataset_size) / static_cast<double>(total);
      avg += c * m.payload.col(0);
    }
  }
  pending_.clear();
  const Index t = round_++;
  const bool last = round_ == cfg_.rounds;
  const auto r = static_cast<std::uint32_t>(t);
  if (cfg_.mode.kind != ModeKind::kSiflM2 || last) return Message::aggregate(r, avg);
  Stopwatch sw(times_.coding);
  Rng rng(derive_seed(cfg_.noise_seed, Stream::kAggregatorNoise, static_cast<std::uint64_t>(t)));
  const Matrix r2 = sample_noise(cfg_.noise.kind, rows_, keys_->p() - 1, cfg_.noise.sigma2, rng);
  return Message::aggregate(r, encode_aggregate(*keys_, EncodedVectord{avg}, r2).values);
}

// ---- client ----

ClientRole::ClientRole(const ProtocolConfig& cfg, std::uint32_t id, ClientKeys keys,
                       Objective objective, const OptimizerKind& optimizer,
                       const LocalRunConfig& local, Index n, std::uint64_t batch_seed)
    : cfg_(cfg),
      id_(id),
      keys_(std::move(keys)),
      objective_(std::move(objective)),
      state_(OptimizerState::make(optimizer, n)),
      local_(local),
      n_(n),
      batch_seed_(batch_seed) {
  cfg_.validate();
  local_.validate();
  if (cfg_.mode.encoded()) {
    if (!keys_.immersion) throw KeyMismatch("client: encoded modes need the immersion");
    if (keys_.immersion->n() != n_) throw KeyMismatch("client: immersion n differs from model");
  }
  if (cfg_.mode.kind == ModeKind::kSiflM2 && !keys_.pi2_right) {
    throw KeyMismatch("client: sifl-m2 needs pi2_right");
  }
}

MessageTag ClientRole::expected_tag() const {
  switch (cfg_.mode.kind) {
    case ModeKind::kPlain:
    case ModeKind::kNoisyBaseline:
      return MessageTag::kBroadcastPlain;
    case ModeKind::kSiflM1:
      return MessageTag::kBroadcastEncoded;
    case ModeKind::kSiflM2:
      return round_ == 0 ? MessageTag::kBroadcastEncoded : MessageTag::kBroadcastDoublyEncoded;
  }
  return MessageTag::kBroadcastPlain;
}

std::optional<Message> ClientRole::on_broadcast(const Message& msg) {
  if (final_) throw ProtocolOrderError("client: message after Done");
  require_round(msg, round_, "client");
  if (msg.tag == MessageTag::kDone) {
    require_shape(msg, n_, 1);
    final_ = msg.vector();
    return std::nullopt;
  }
  if (msg.tag != expected_tag()) {
    throw ProtocolOrderError("client: got " + to_string(msg.tag) + ", expected " +
                             to_string(expected_tag()) + " in round " + std::to_string(round_));
  }
  // Shape errors leave the round untouched.
  const bool doubly = msg.tag == MessageTag::kBroadcastDoublyEncoded;
  if (!cfg_.mode.encoded()) {
    require_shape(msg, n_, 1);
  } else {
    require_shape(msg, keys_.immersion->n_tilde(), doubly ? keys_.pi2_right->size() : 1);
  }
  const Index t = round_++;
  Rng rng(derive_seed(batch_seed_, Stream::kClientBatch, id_, static_cast<std::uint64_t>(t)));
  const auto r = static_cast<std::uint32_t>(t);
  const auto size = static_cast<std::uint64_t>(objective_.size);

  if (!cfg_.mode.encoded()) {
    Vector w;
    {
      Stopwatch sw(times_.local);
      w = plain_local_run(state_, msg.vector(), objective_, local_, rng);
    }
    if (cfg_.mode.kind == ModeKind::kNoisyBaseline) {
      w = clip_to_norm(w, cfg_.noise.baseline_clip);
      Rng noise(derive_seed(cfg_.noise_seed, Stream::kBaselineNoise, id_,
                            static_cast<std::uint64_t>(t)));
      w += sample_gaussian(n_, 1, cfg_.mode.baseline_sigma, noise);
    }
    return Message::local_update(r, id_, w, size);
  }

  const Immersiond& im = *keys_.immersion;
  EncodedVectord start;
  if (doubly) {
    Stopwatch sw(times_.coding);
    start = decode_aggregate(*keys_.pi2_right, EncodedMatrixd{msg.payload});
  } else {
    start.values = msg.vector();
  }
  Stopwatch sw(times_.local);
  const EncodedVectord out = target_local_run(im, state_, start, objective_, local_, rng);
  return Message::local_update(r, id_, out.values, size);
}

}  // namespace sifl

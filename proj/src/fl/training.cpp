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

#include "sifl/fl/training.hpp"

#include <chrono>
#include <cmath>

#include "sifl/coding/codec.hpp"
#include "sifl/core/errors.hpp"
#include "sifl/fl/wire.hpp"

namespace sifl {

namespace {

void check_setup(const TrainingSetup& s) {
  if (!s.train) throw InvalidArgs("run_training: no training dataset");
  s.protocol.validate();
  s.local.validate();
  if (s.partition.clients() != s.protocol.clients) {
    throw InvalidArgs("run_training: partition has " + std::to_string(s.partition.clients()) +
                      " clients, protocol expects " + std::to_string(s.protocol.clients));
  }
  const Index n = parameter_count(s.model);
  if (s.protocol.mode.encoded()) {
    if (!s.server_keys) throw KeyMismatch("run_training: encoded mode without server keys");
    if (s.server_keys->n() != n) {
      throw KeyMismatch("run_training: keys have n=" + std::to_string(s.server_keys->n()) +
                        ", model has n=" + std::to_string(n));
    }
  }
  if (s.protocol.mode.kind == ModeKind::kSiflM2 && !s.aggregator_keys) {
    throw KeyMismatch("run_training: sifl-m2 without aggregator keys");
  }
}

// The observer's view of the global model carried by an aggregate.
Vector observe(const TrainingSetup& s, const Message& aggregate) {
  if (!s.protocol.mode.encoded()) return aggregate.vector();
  if (aggregate.is_vector()) return decode_model(*s.server_keys, EncodedVectord{aggregate.vector()});
  const EncodedVectord unmasked = decode_aggregate(*s.aggregator_keys, EncodedMatrixd{aggregate.payload});
  return decode_model(*s.server_keys, unmasked);
}

void evaluate(const TrainingSetup& s, RoundRecord& rec) {
  rec.test_accuracy = std::nan("");
  if (!s.evaluate) return;
  rec.train_loss = mean_loss(s.model, rec.global, *s.train);
  if (is_classifier(s.model)) rec.test_accuracy = accuracy(s.model, rec.global, s.test ? *s.test : *s.train);
}

}  // namespace

TrainingTrace run_training(const TrainingSetup& setup, Transport& transport) {
  check_setup(setup);
  const ProtocolConfig& pc = setup.protocol;
  const Index n = parameter_count(setup.model);
  const bool encoded = pc.mode.encoded();
  const bool m2 = pc.mode.kind == ModeKind::kSiflM2;

  TrainingTrace trace;
  trace.mode = pc.mode;
  trace.n = n;
  trace.n_tilde = encoded ? setup.server_keys->n_tilde() : 0;
  trace.p = m2 ? setup.aggregator_keys->p() : 0;

  // Client datasets live here for the whole run; objectives refer to them.
  std::vector<Dataset> client_data;
  client_data.reserve(static_cast<std::size_t>(pc.clients));
  for (Index c = 0; c < pc.clients; ++c) {
    client_data.push_back(setup.train->subset(setup.partition.client_rows[static_cast<std::size_t>(c)]));
  }

  ServerRole server(pc, n, encoded ? setup.server_keys : std::nullopt);
  AggregatorRole aggregator(pc, encoded ? trace.n_tilde : n,
                            m2 ? setup.aggregator_keys : std::nullopt);
  std::vector<ClientRole> clients;
  clients.reserve(static_cast<std::size_t>(pc.clients));
  for (Index c = 0; c < pc.clients; ++c) {
    ClientKeys keys;
    if (encoded) keys.immersion = setup.server_keys->immersion();
    if (m2) keys.pi2_right = setup.aggregator_keys->pi2_right();
    clients.emplace_back(pc, static_cast<std::uint32_t>(c), std::move(keys),
                         model_objective(setup.model, client_data[static_cast<std::size_t>(c)]),
                         setup.optimizer, setup.local, n, setup.seed);
  }

  RoundRecord first;
  first.round = 0;
  first.global = init_params(setup.model, setup.seed);
  evaluate(setup, first);
  trace.rounds.push_back(first);

  Message msg = server.init(first.global);
  PhaseTimes previous;
  while (msg.tag != MessageTag::kDone) {
    const auto start = std::chrono::steady_clock::now();
    RoundRecord rec;
    rec.round = static_cast<Index>(msg.round) + 1;

    const std::vector<std::uint8_t> frame = serialize(msg);
    for (Index c = 0; c < pc.clients; ++c) {
      transport.send(Address::server(), Address::client(static_cast<std::uint32_t>(c)), frame);
    }
    rec.counts.broadcasts = 1;
    for (Index c = 0; c < pc.clients; ++c) {
      const auto id = static_cast<std::uint32_t>(c);
      const Envelope env = transport.receive(Address::client(id));
      const auto update = clients[static_cast<std::size_t>(c)].on_broadcast(deserialize(env.frame));
      if (!update) throw ProtocolOrderError("client finished before the server");
      transport.send(Address::client(id), Address::aggregator(), serialize(*update));
      ++rec.counts.uploads;
    }
    for (Index c = 0; c < pc.clients; ++c) {
      aggregator.on_update(deserialize(transport.receive(Address::aggregator()).frame));
    }
    transport.send(Address::aggregator(), Address::server(), serialize(aggregator.aggregate()));
    rec.counts.aggregates = 1;
    const Message aggregate = deserialize(transport.receive(Address::server()).frame);
    msg = server.on_aggregate(aggregate);

    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    PhaseTimes now = server.times();
    now += aggregator.times();
    for (const auto& c : clients) now += c.times();
    rec.times = {now.local - previous.local, now.aggregate - previous.aggregate,
                 now.coding - previous.coding};
    previous = now;
    rec.global = observe(setup, aggregate);
    evaluate(setup, rec);
    trace.rounds.push_back(std::move(rec));
  }
  trace.final_model = msg.vector();
  return trace;
}

TrainingTrace run_training(const TrainingSetup& setup) {
  InProcessTransport transport;
  return run_training(setup, transport);
}

}  // namespace sifl

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

#include "sifl/models/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "sifl/core/errors.hpp"
#include "sifl/core/rng.hpp"
#include "sifl/models/params.hpp"

namespace sifl {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstLayerMap = Eigen::Map<const RowMajor>;
using LayerMap = Eigen::Map<RowMajor>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Index> layer_sizes(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const LinearRegression& m) { return std::vector<Index>{m.dim, 1}; },
                        [](const LogisticRegression& m) {
                          return std::vector<Index>{m.dim, m.classes};
                        },
                        [](const Mlp& m) { return m.layers; },
                    },
                    spec);
}

void check_spec(const ModelSpec& spec) {
  std::visit(Overloaded{
                 [](const LinearRegression& m) {
                   if (m.dim < 1) throw DimensionError("linear regression needs dim >= 1");
                 },
                 [](const LogisticRegression& m) {
                   if (m.dim < 1 || m.classes < 2) {
                     throw DimensionError("logistic regression needs dim >= 1, classes >= 2");
                   }
                 },
                 [](const Mlp& m) {
                   if (m.layers.size() < 2) throw DimensionError("mlp needs >= 2 layer sizes");
                   for (Index s : m.layers) {
                     if (s < 1) throw DimensionError("mlp layer sizes must be positive");
                   }
                   if (m.layers.back() < 2) throw DimensionError("mlp output needs >= 2 classes");
                 },
             },
             spec);
}

void check_inputs(const ModelSpec& spec, const Vector& w, const Dataset& data) {
  check_spec(spec);
  if (w.size() != parameter_count(spec)) {
    throw DimensionError("parameter vector has length " + std::to_string(w.size()) +
                         ", model needs " + std::to_string(parameter_count(spec)));
  }
  if (data.dim() != input_dim(spec)) {
    throw DimensionError("dataset has " + std::to_string(data.dim()) +
                         " features, model expects " + std::to_string(input_dim(spec)));
  }
  if (data.labels.size() != data.size()) throw DimensionError("label count differs from rows");
}

Matrix gather_rows(const Matrix& x, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Index r = rows[i];
    if (r < 0 || r >= x.rows()) throw DimensionError("batch row index out of range");
    out.row(static_cast<Index>(i)) = x.row(r);
  }
  return out;
}

Index class_of(double label, Index classes) {
  const double rounded = std::round(label);
  if (rounded != label || rounded < 0 || rounded >= static_cast<double>(classes)) {
    throw DimensionError("label " + std::to_string(label) + " is not a class in [0, " +
                         std::to_string(classes) + ")");
  }
  return static_cast<Index>(rounded);
}

// Forward pass of a ReLU network; activations[0] is the input batch and
// activations.back() the logits.
struct Forward {
  std::vector<Matrix> activations;
};

Forward forward(std::span<const Index> sizes, const Vector& w, Matrix input) {
  Forward f;
  f.activations.reserve(sizes.size());
  f.activations.push_back(std::move(input));
  Index at = 0;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    const Index in = sizes[l - 1];
    const Index out = sizes[l];
    const ConstLayerMap weights(w.data() + at, out, in);
    at += out * in;
    const auto bias = w.segment(at, out);
    at += out;
    Matrix z = f.activations.back() * weights.transpose();
    z.rowwise() += bias.transpose();
    if (l + 1 < sizes.size()) z = z.cwiseMax(0.0);
    f.activations.push_back(std::move(z));
  }
  return f;
}

// Row-wise log-softmax.
Matrix log_softmax(const Matrix& logits) {
  Matrix out = logits;
  for (Index i = 0; i < out.rows(); ++i) {
    const double mx = out.row(i).maxCoeff();
    out.row(i).array() -= mx;
    const double lse = std::log(out.row(i).array().exp().sum());
    out.row(i).array() -= lse;
  }
  return out;
}

LossGrad network_loss_grad(std::span<const Index> sizes, const Vector& w, const Matrix& x,
                           std::span<const double> labels, bool want_grad) {
  const Index b = x.rows();
  const Index classes = sizes.back();
  Forward f = forward(sizes, w, x);
  const Matrix logp = log_softmax(f.activations.back());
  LossGrad out;
  Matrix delta = logp.array().exp();  // softmax probabilities
  for (Index i = 0; i < b; ++i) {
    const Index c = class_of(labels[static_cast<std::size_t>(i)], classes);
    out.loss -= logp(i, c);
    delta(i, c) -= 1.0;
  }
  out.loss /= static_cast<double>(b);
  if (!want_grad) return out;
  delta /= static_cast<double>(b);

  out.grad.resize(w.size());
  // Offsets of each layer's block in the flat vector.
  std::vector<Index> offsets(sizes.size(), 0);
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    offsets[l] = offsets[l - 1] + (l > 1 ? sizes[l - 1] * (sizes[l - 2] + 1) : 0);
  }
  for (std::size_t l = sizes.size() - 1; l >= 1; --l) {
    const Index in = sizes[l - 1];
    const Index out_dim = sizes[l];
    const Index at = offsets[l];
    const Matrix& a_prev = f.activations[l - 1];
    LayerMap(out.grad.data() + at, out_dim, in).noalias() = delta.transpose() * a_prev;
    out.grad.segment(at + out_dim * in, out_dim) = delta.colwise().sum().transpose();
    if (l == 1) break;
    const ConstLayerMap weights(w.data() + at, out_dim, in);
    Matrix back = delta * weights;
    // ReLU derivative; activations are post-ReLU, so a > 0 iff z > 0.
    delta = back.cwiseProduct((a_prev.array() > 0.0).cast<double>().matrix());
  }
  return out;
}

LossGrad linear_loss_grad(const Vector& w, const Matrix& x, const Vector& y, bool want_grad) {
  const Vector resid = x * w - y;
  LossGrad out;
  const double b = static_cast<double>(x.rows());
  out.loss = 0.5 * resid.squaredNorm() / b;
  if (want_grad) out.grad = x.transpose() * resid / b;
  return out;
}

LossGrad evaluate(const ModelSpec& spec, const Vector& w, const Matrix& x, const Vector& y,
                  bool want_grad) {
  if (x.rows() < 1) throw EmptyBatch("batch is empty");
  if (std::holds_alternative<LinearRegression>(spec)) {
    return linear_loss_grad(w, x, y, want_grad);
  }
  const auto sizes = layer_sizes(spec);
  return network_loss_grad(sizes, w, x, std::span<const double>(y.data(), y.size()),
                           want_grad);
}

}  // namespace

Index parameter_count(const ModelSpec& spec) {
  check_spec(spec);
  if (const auto* m = std::get_if<LinearRegression>(&spec)) return m->dim;
  const auto sizes = layer_sizes(spec);
  return flat_size(sizes);
}

Index input_dim(const ModelSpec& spec) { return layer_sizes(spec).front(); }

bool is_classifier(const ModelSpec& spec) {
  return !std::holds_alternative<LinearRegression>(spec);
}

std::string describe(const ModelSpec& spec) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const LinearRegression& m) { os << "linear(" << m.dim << ")"; },
                 [&](const LogisticRegression& m) {
                   os << "logistic(" << m.dim << "," << m.classes << ")";
                 },
                 [&](const Mlp& m) {
                   os << "mlp(";
                   for (std::size_t i = 0; i < m.layers.size(); ++i) {
                     os << (i ? "," : "") << m.layers[i];
                   }
                   os << ")";
                 },
             },
             spec);
  return os.str();
}

LossGrad loss_and_grad(const ModelSpec& spec, const Vector& w, const Dataset& data,
                       std::span<const Index> batch) {
  check_inputs(spec, w, data);
  if (batch.empty()) throw EmptyBatch("batch is empty");
  Vector y(static_cast<Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i] < 0 || batch[i] >= data.size()) {
      throw DimensionError("batch row index out of range");
    }
    y(static_cast<Index>(i)) = data.labels(batch[i]);
  }
  return evaluate(spec, w, gather_rows(data.features, batch), y, true);
}

LossGrad loss_and_grad(const ModelSpec& spec, const Vector& w, const Dataset& data) {
  check_inputs(spec, w, data);
  return evaluate(spec, w, data.features, data.labels, true);
}

double mean_loss(const ModelSpec& spec, const Vector& w, const Dataset& data) {
  check_inputs(spec, w, data);
  return evaluate(spec, w, data.features, data.labels, false).loss;
}

double accuracy(const ModelSpec& spec, const Vector& w, const Dataset& data) {
  check_inputs(spec, w, data);
  if (!is_classifier(spec)) throw InvalidArgs("accuracy is defined for classifiers only");
  if (data.size() < 1) throw EmptyDataset("accuracy on an empty dataset");
  const auto sizes = layer_sizes(spec);
  const Forward f = forward(sizes, w, data.features);
  const Matrix& logits = f.activations.back();
  Index correct = 0;
  for (Index i = 0; i < data.size(); ++i) {
    Index arg = 0;
    logits.row(i).maxCoeff(&arg);
    if (arg == class_of(data.labels(i), sizes.back())) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

Vector init_params(const ModelSpec& spec, std::uint64_t seed) {
  Rng rng(derive_seed(seed, Stream::kInit));
  Vector w(parameter_count(spec));
  for (Index i = 0; i < w.size(); ++i) w(i) = rng.uniform(-0.05, 0.05);
  return w;
}

}  // namespace sifl

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

#include "sifl/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sifl/core/errors.hpp"

namespace sifl {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment",
       {"modes", "seed", "noise_seed", "rounds", "local_steps", "clients", "transport"}},
      {"model", {"kind", "dim", "classes", "layers"}},
      {"data",
       {"source", "kind", "samples", "classes", "separation", "seed", "test_samples", "path",
        "test_path", "header", "label_column"}},
      {"optimizer", {"kind", "lr", "beta", "beta1", "beta2", "eps", "batch_size"}},
      {"keys", {"extra", "n_tilde", "p", "scale", "max_condition", "seed", "layout", "file"}},
      {"privacy",
       {"noise", "sigma1", "sigma2", "clip", "calibrate", "eps_local", "delta_local",
        "eps_global", "delta_global", "baseline_sigma"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Section {
 public:
  Section(const pt::ptree& tree, std::string name) : name_(std::move(name)) {
    if (const auto child = tree.get_child_optional(name_)) node_ = &*child;
  }

  bool has(const std::string& key) const { return node_ && node_->count(key) > 0; }

  std::string str(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    return trim(node_->get<std::string>(key));
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const std::string text = str(key, "");
    double v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError(where(key) + ": not a number: '" + text + "'");
    }
    return v;
  }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string text = str(key, "");
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigError(where(key) + ": not a non-negative integer: '" + text + "'");
    }
    return v;
  }

  Index index(const std::string& key, Index fallback) const {
    if (!has(key)) return fallback;
    const std::uint64_t v = u64(key, 0);
    if (v > static_cast<std::uint64_t>(std::numeric_limits<Index>::max())) {
      throw ConfigError(where(key) + ": value too large");
    }
    return static_cast<Index>(v);
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string text = str(key, "");
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError(where(key) + ": expected true or false, got '" + text + "'");
  }

  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

 private:
  std::string name_;
  const pt::ptree* node_ = nullptr;
};

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string fmt_layers(const std::vector<Index>& layers) {
  std::string out;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(layers[i]);
  }
  return out;
}

std::string layout_name(KeyLayout l) {
  switch (l) {
    case KeyLayout::kDense:
      return "dense";
    case KeyLayout::kStructured:
      return "structured";
    case KeyLayout::kAuto:
      break;
  }
  return "auto";
}

void check_unknown(const pt::ptree& tree) {
  const auto& allowed = allowed_keys();
  for (const auto& [section, node] : tree) {
    const auto it = allowed.find(section);
    if (it == allowed.end()) {
      if (node.empty()) throw ConfigError("key '" + section + "' outside any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : node) {
      if (!it->second.count(key)) throw ConfigError("unknown key [" + section + "] " + key);
    }
  }
}

}  // namespace

KeyGenConfig ExperimentConfig::key_gen_config() const {
  KeyGenConfig k = keys;
  k.n = n();
  k.n_tilde = n_tilde();
  return k;
}

bool ExperimentConfig::has_mode(ModeKind kind) const {
  for (const Mode& m : modes) {
    if (m.kind == kind) return true;
  }
  return false;
}

bool ExperimentConfig::needs_keys() const {
  return has_mode(ModeKind::kSiflM1) || has_mode(ModeKind::kSiflM2);
}

void ExperimentConfig::validate() const {
  try {
    if (modes.empty()) throw ConfigError("[experiment] modes: at least one mode is required");
    if (rounds < 0) throw ConfigError("[experiment] rounds must be >= 0");
    if (local_steps < 1) throw ConfigError("[experiment] local_steps must be >= 1");
    if (clients < 1) throw ConfigError("[experiment] clients must be >= 1");
    (void)parameter_count(model);
    sifl::validate(optimizer);
    if (key_extra < 1) throw ConfigError("[keys] n_tilde must exceed n");
    if (keys.p < 2) throw ConfigError("[keys] p must be >= 2");
    if (!(keys.scale > 0.0)) throw ConfigError("[keys] scale must be positive");
    if (!(keys.max_condition >= 1.0)) throw ConfigError("[keys] max_condition must be >= 1");
    privacy.validate();
    if (has_mode(ModeKind::kNoisyBaseline) && !(baseline_sigma > 0.0)) {
      throw ConfigError("[privacy] baseline_sigma must be positive");
    }
    if (data.source == DataSource::kSynthetic) {
      if (data.synthetic.samples < clients) {
        throw ConfigError("[data] samples must be at least the number of clients");
      }
      if (is_classifier(model)) {
        if (data.synthetic.kind != SyntheticKind::kBlobs) {
          throw ConfigError("[data] classifiers need kind = blobs");
        }
        const Index classes = std::holds_alternative<Mlp>(model)
                                  ? std::get<Mlp>(model).layers.back()
                                  : std::get<LogisticRegression>(model).classes;
        if (data.synthetic.classes > classes) {
          throw ConfigError("[data] more classes than the model outputs");
        }
      } else if (data.synthetic.kind != SyntheticKind::kLinear) {
        throw ConfigError("[data] linear regression needs kind = linear");
      }
    } else if (data.path.empty()) {
      throw ConfigError("[data] path is required for source = csv");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  check_unknown(tree);

  ExperimentConfig c;
  const Section ex(tree, "experiment");
  c.seed = ex.u64("seed", c.seed);
  c.noise_seed = ex.u64("noise_seed", c.seed);
  c.rounds = ex.index("rounds", c.rounds);
  c.local_steps = ex.index("local_steps", c.local_steps);
  c.clients = ex.index("clients", c.clients);
  const std::string transport = ex.str("transport", "inproc");
  if (transport == "inproc") {
    c.transport = TransportKind::kInProcess;
  } else if (transport == "tcp") {
    c.transport = TransportKind::kTcp;
  } else {
    throw ConfigError("[experiment] transport: expected inproc or tcp, got '" + transport + "'");
  }

  const Section pr(tree, "privacy");
  c.baseline_sigma = pr.real("baseline_sigma", c.baseline_sigma);
  if (ex.has("modes")) {
    c.modes.clear();
    for (const auto& name : split_list(ex.str("modes", ""))) {
      try {
        c.modes.push_back(parse_mode(name, c.baseline_sigma));
      } catch (const InvalidArgs& e) {
        throw ConfigError(std::string("[experiment] modes: ") + e.what());
      }
    }
  }

  const Section mo(tree, "model");
  const std::string kind = mo.str("kind", "logistic");
  if (kind == "linear") {
    c.model = LinearRegression{mo.index("dim", 10)};
  } else if (kind == "logistic") {
    c.model = LogisticRegression{mo.index("dim", 10), mo.index("classes", 2)};
  } else if (kind == "mlp") {
    Mlp m;
    for (const auto& s : split_list(mo.str("layers", ""))) {
      Index v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("[model] layers: not an integer: '" + s + "'");
      }
      m.layers.push_back(v);
    }
    c.model = m;
  } else {
    throw ConfigError("[model] kind: expected linear, logistic or mlp, got '" + kind + "'");
  }

  const Section da(tree, "data");
  const std::string source = da.str("source", "synthetic");
  if (source == "synthetic") {
    c.data.source = DataSource::kSynthetic;
  } else if (source == "csv") {
    c.data.source = DataSource::kCsv;
  } else {
    throw ConfigError("[data] source: expected synthetic or csv, got '" + source + "'");
  }
  const bool classifier = is_classifier(c.model);
  const std::string dkind = da.str("kind", classifier ? "blobs" : "linear");
  if (dkind == "blobs") {
    c.data.synthetic.kind = SyntheticKind::kBlobs;
  } else if (dkind == "linear") {
    c.data.synthetic.kind = SyntheticKind::kLinear;
  } else {
    throw ConfigError("[data] kind: expected blobs or linear, got '" + dkind + "'");
  }
  c.data.synthetic.samples = da.index("samples", 1000);
  Index default_classes = 2;
  if (const auto* lr = std::get_if<LogisticRegression>(&c.model)) default_classes = lr->classes;
  if (const auto* mlp = std::get_if<Mlp>(&c.model); mlp && !mlp->layers.empty()) {
    default_classes = mlp->layers.back();
  }
  c.data.synthetic.classes = da.index("classes", default_classes);
  c.data.synthetic.separation = da.real("separation", c.data.synthetic.separation);
  c.data.synthetic.seed = da.u64("seed", c.seed);
  c.data.test_samples = da.index("test_samples", 0);
  c.data.path = da.str("path", "");
  c.data.test_path = da.str("test_path", "");
  c.data.schema.has_header = da.boolean("header", false);
  c.data.schema.label_column = da.index("label_column", 0);

  const Section op(tree, "optimizer");
  const std::string okind = op.str("kind", "sgd");
  if (okind == "sgd") {
    c.optimizer = Sgd{op.real("lr", 0.01)};
  } else if (okind == "momentum") {
    c.optimizer = Momentum{op.real("lr", 0.01), op.real("beta", 0.9)};
  } else if (okind == "adam") {
    c.optimizer = Adam{op.real("lr", 0.001), op.real("beta1", 0.9), op.real("beta2", 0.999),
                       op.real("eps", 1e-8)};
  } else {
    throw ConfigError("[optimizer] kind: expected sgd, momentum or adam, got '" + okind + "'");
  }
  c.batch_size = op.index("batch_size", 0);

  const Section ke(tree, "keys");
  if (ke.has("extra") && ke.has("n_tilde")) {
    throw ConfigError("[keys] give either extra or n_tilde, not both");
  }
  if (ke.has("n_tilde")) {
    Index n = 0;
    try {
      n = parameter_count(c.model);
    } catch (const Error& e) {
      throw ConfigError(std::string("[model] ") + e.what());
    }
    c.key_extra = ke.index("n_tilde", 0) - n;
  } else {
    c.key_extra = ke.index("extra", c.key_extra);
  }
  c.keys.p = ke.index("p", 3);
  c.keys.scale = ke.real("scale", 1.0);
  c.keys.max_condition = ke.real("max_condition", 1e4);
  c.keys.seed = ke.u64("seed", c.seed);
  const std::string layout = ke.str("layout", "auto");
  if (layout == "auto") {
    c.keys.layout = KeyLayout::kAuto;
  } else if (layout == "dense") {
    c.keys.layout = KeyLayout::kDense;
  } else if (layout == "structured") {
    c.keys.layout = KeyLayout::kStructured;
  } else {
    throw ConfigError("[keys] layout: expected auto, dense or structured, got '" + layout + "'");
  }
  c.key_file = ke.str("file", "");

  try {
    c.privacy.noise = parse_noise_kind(pr.str("noise", "gaussian"));
  } catch (const InvalidArgs& e) {
    throw ConfigError(std::string("[privacy] noise: ") + e.what());
  }
  c.privacy.sigma1 = pr.real("sigma1", 1.0);
  c.privacy.sigma2 = pr.real("sigma2", 1.0);
  c.privacy.clip = pr.real("clip", std::numeric_limits<double>::infinity());
  c.privacy.calibrate = pr.boolean("calibrate", false);
  c.privacy.eps_local = pr.real("eps_local", 1.0);
  c.privacy.delta_local = pr.real("delta_local", 1e-5);
  c.privacy.eps_global = pr.real("eps_global", 1.0);
  c.privacy.delta_global = pr.real("delta_global", 1e-5);

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  ExperimentConfig c = parse_config(in);
  const auto base = path.parent_path();
  auto resolve = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = base / p;
  };
  resolve(c.data.path);
  resolve(c.data.test_path);
  resolve(c.key_file);
  return c;
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\nmodes = ";
  for (std::size_t i = 0; i < c.modes.size(); ++i) os << (i ? "," : "") << to_string(c.modes[i]);
  os << "\nseed = " << c.seed << "\nnoise_seed = " << c.noise_seed << "\nrounds = " << c.rounds
     << "\nlocal_steps = " << c.local_steps << "\nclients = " << c.clients
     << "\ntransport = " << (c.transport == TransportKind::kTcp ? "tcp" : "inproc") << "\n\n";

  os << "[model]\n";
  if (const auto* m = std::get_if<LinearRegression>(&c.model)) {
    os << "kind = linear\ndim = " << m->dim << "\n\n";
  } else if (const auto* m = std::get_if<LogisticRegression>(&c.model)) {
    os << "kind = logistic\ndim = " << m->dim << "\nclasses = " << m->classes << "\n\n";
  } else {
    os << "kind = mlp\nlayers = " << fmt_layers(std::get<Mlp>(c.model).layers) << "\n\n";
  }

  const auto& s = c.data.synthetic;
  os << "[data]\nsource = " << (c.data.source == DataSource::kCsv ? "csv" : "synthetic")
     << "\nkind = " << (s.kind == SyntheticKind::kBlobs ? "blobs" : "linear")
     << "\nsamples = " << s.samples << "\nclasses = " << s.classes
     << "\nseparation = " << fmt(s.separation) << "\nseed = " << s.seed
     << "\ntest_samples = " << c.data.test_samples << "\npath = " << c.data.path.string()
     << "\ntest_path = " << c.data.test_path.string()
     << "\nheader = " << (c.data.schema.has_header ? "true" : "false")
     << "\nlabel_column = " << c.data.schema.label_column << "\n\n";

  os << "[optimizer]\n";
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Sgd>) {
          os << "kind = sgd\nlr = " << fmt(k.lr) << "\n";
        } else if constexpr (std::is_same_v<K, Momentum>) {
          os << "kind = momentum\nlr = " << fmt(k.lr) << "\nbeta = " << fmt(k.beta) << "\n";
        } else {
          os << "kind = adam\nlr = " << fmt(k.lr) << "\nbeta1 = " << fmt(k.beta1)
             << "\nbeta2 = " << fmt(k.beta2) << "\neps = " << fmt(k.eps) << "\n";
        }
      },
      c.optimizer);
  os << "batch_size = " << c.batch_size << "\n\n";

  os << "[keys]\nextra = " << c.key_extra << "\np = " << c.keys.p
     << "\nscale = " << fmt(c.keys.scale) << "\nmax_condition = " << fmt(c.keys.max_condition)
     << "\nseed = " << c.keys.seed << "\nlayout = " << layout_name(c.keys.layout)
     << "\nfile = " << c.key_file.string() << "\n\n";

  const auto& p = c.privacy;
  os << "[privacy]\nnoise = " << to_string(p.noise) << "\nsigma1 = " << fmt(p.sigma1)
     << "\nsigma2 = " << fmt(p.sigma2) << "\nclip = " << fmt(p.clip)
     << "\ncalibrate = " << (p.calibrate ? "true" : "false")
     << "\neps_local = " << fmt(p.eps_local) << "\ndelta_local = " << fmt(p.delta_local)
     << "\neps_global = " << fmt(p.eps_global) << "\ndelta_global = " << fmt(p.delta_global)
     << "\nbaseline_sigma = " << fmt(c.baseline_sigma) << "\n";
  return os.str();
}

}  // namespace sifl

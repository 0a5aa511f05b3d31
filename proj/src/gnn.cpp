#include "graphsal/gnn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphsal {

namespace {

constexpr int kDegreeBuckets = 4; // degrees 1..4, clamped at both ends
constexpr int kBondTypes = 4;

const char* const kBondTypeNames[kBondTypes] = {"single", "double", "triple", "aromatic"};

int degree_bucket(int degree) { return std::clamp(degree, 1, kDegreeBuckets) - 1; }

Tensor glorot(int64_t rows, int64_t cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Tensor t(rows, cols);
  for (int64_t i = 0; i < t.size(); ++i) t.data()[i] = rng.uniform(-limit, limit);
  return t;
}

} // namespace

const char* model_kind_name(ModelKind kind) {
  return kind == ModelKind::nfp ? "nfp" : "ggnn";
}

const char* task_name(Task task) {
  return task == Task::binary ? "binary" : "regression";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "nfp") return ModelKind::nfp;
  if (name == "ggnn") return ModelKind::ggnn;
  throw std::invalid_argument("unknown model kind '" + name + "' (expected nfp or ggnn)");
}

Task task_from_name(const std::string& name) {
  if (name == "binary") return Task::binary;
  if (name == "regression") return Task::regression;
  throw std::invalid_argument("unknown task '" + name + "' (expected binary or regression)");
}

ModelParams init_params(ModelKind kind, Task task, const AtomVocabulary& vocab,
                        int hidden_dim, int layers, double dropout_rate, uint64_t seed) {
  if (hidden_dim < 1 || layers < 1) throw std::invalid_argument("bad model dimensions");
  if (dropout_rate < 0.0 || dropout_rate >= 1.0)
    throw std::invalid_argument("dropout rate must be in [0,1)");

  ModelParams p;
  p.kind = kind;
  p.task = task;
  p.hidden_dim = hidden_dim;
  p.layers = layers;
  p.dropout_rate = dropout_rate;
  p.vocab = vocab;

  const int d = hidden_dim;
  // fix the shape catalog first, then fill deterministically in name order
  p.tensors["embedding"] = Tensor(vocab.feature_count(), d);
  if (kind == ModelKind::nfp) {
    for (int l = 0; l < layers; ++l) {
      for (int b = 1; b <= kDegreeBuckets; ++b)
        p.tensors["conv" + std::to_string(l) + ".deg" + std::to_string(b)] = Tensor(d, d);
      p.tensors["readout" + std::to_string(l)] = Tensor(d, d);
    }
  } else {
    for (int l = 0; l < layers; ++l) {
      const std::string prefix = "msg" + std::to_string(l) + ".";
      for (const char* bt : kBondTypeNames) p.tensors[prefix + bt] = Tensor(d, d);
      const std::string gru = "gru" + std::to_string(l) + ".";
      for (const char* gate : {"wz", "uz", "wr", "ur", "wh", "uh"})
        p.tensors[gru + gate] = Tensor(d, d);
      for (const char* bias : {"bz", "br", "bh"}) p.tensors[gru + bias] = Tensor(1, d);
    }
    p.tensors["gate.w_hidden"] = Tensor(d, d);
    p.tensors["gate.w_input"] = Tensor(d, d);
    p.tensors["gate.bias"] = Tensor(1, d);
    p.tensors["emb.w"] = Tensor(d, d);
    p.tensors["emb.bias"] = Tensor(1, d);
  }
  p.tensors["head.weight"] = Tensor(d, 1);
  p.tensors["head.bias"] = Tensor(1, 1);

  Rng master(seed);
  uint64_t index = 0;
  for (auto& [name, tensor] : p.tensors) {
    Rng stream = master.fork(index++);
    if (name == "embedding") {
      const double limit = std::sqrt(3.0 / static_cast<double>(d));
      for (int64_t i = 0; i < tensor.size(); ++i) tensor.data()[i] = stream.uniform(-limit, limit);
    } else if (tensor.rows() == 1 && name.find("bias") != std::string::npos) {
      // biases start at zero
    } else {
      tensor = glorot(tensor.rows(), tensor.cols(), stream);
    }
  }
  return p;
}

DropoutMaskSet sample_dropout_masks(int atoms, int hidden_dim, int layers, double rate,
                                    Rng& rng) {
  DropoutMaskSet set;
  if (rate == 0.0) {
    set.scale = 1.0;
    for (int l = 0; l < layers; ++l)
      set.masks.push_back(Tensor::full(atoms, hidden_dim, 1.0));
    return set;
  }
  set.scale = 1.0 / (1.0 - rate);
  for (int l = 0; l < layers; ++l) {
    Tensor mask(atoms, hidden_dim);
    for (int64_t i = 0; i < mask.size(); ++i)
      mask.data()[i] = rng.uniform() >= rate ? 1.0 : 0.0;
    set.masks.push_back(std::move(mask));
  }
  return set;
}

ValueId build_architecture(Tape& tape, const ModelParams& params,
                           const MolecularGraph& graph, ValueId phi,
                           const DropoutMaskSet& masks,
                           const std::function<ValueId(const std::string&)>& get_param) {
  const int n = graph.atom_count();
  const int d = params.hidden_dim;
  if (!masks.masks.empty()) {
    if (static_cast<int>(masks.masks.size()) != params.layers)
      throw std::invalid_argument("mask set has " + std::to_string(masks.masks.size()) +
                                  " masks for " + std::to_string(params.layers) + " layers");
    for (const Tensor& m : masks.masks)
      if (m.rows() != n || m.cols() != d)
        throw std::invalid_argument("mask shape " + m.shape_str() + " does not match " +
                                    std::to_string(n) + "x" + std::to_string(d));
  }

  auto apply_dropout = [&](ValueId h, int layer) {
    if (masks.masks.empty()) return h;
    return tape.scale(tape.apply_mask(h, masks.masks[layer]), masks.scale);
  };

  ValueId h = phi;
  ValueId fingerprint{};

  if (params.kind == ModelKind::nfp) {
    // neighbor-sum scatter plan shared by all rounds
    std::vector<int64_t> src, dst;
    for (const Bond& b : graph.bonds()) {
      src.push_back(b.i);
      dst.push_back(b.j);
      src.push_back(b.j);
      dst.push_back(b.i);
    }
    // atoms grouped by clamped degree
    std::vector<std::vector<int64_t>> buckets(kDegreeBuckets);
    for (int a = 0; a < n; ++a) buckets[degree_bucket(graph.degree(a))].push_back(a);

    for (int l = 0; l < params.layers; ++l) {
      ValueId pooled = h;
      if (!src.empty()) {
        ValueId nb = tape.scatter_add_rows(tape.gather_rows(h, src), dst, n);
        pooled = tape.add(h, nb);
      }
      ValueId pre{};
      for (int b = 0; b < kDegreeBuckets; ++b) {
        if (buckets[b].empty()) continue;
        ValueId w = get_param("conv" + std::to_string(l) + ".deg" + std::to_string(b + 1));
        ValueId part = tape.matmul(tape.gather_rows(pooled, buckets[b]), w);
        ValueId placed = tape.scatter_add_rows(part, buckets[b], n);
        pre = pre.valid() ? tape.add(pre, placed) : placed;
      }
      h = apply_dropout(tape.sigmoid(pre), l);

      // per-round readout: row-softmax projection summed over atoms
      ValueId z = tape.row_softmax(tape.matmul(h, get_param("readout" + std::to_string(l))));
      ValueId fp = tape.scatter_add_rows(z, std::vector<int64_t>(n, 0), 1);
      fingerprint = fingerprint.valid() ? tape.add(fingerprint, fp) : fp;
    }
  } else {
    // per-bond-type directed edge lists
    std::vector<std::vector<int64_t>> src(kBondTypes), dst(kBondTypes);
    for (const Bond& b : graph.bonds()) {
      const int t = bond_type_index(b.order);
      src[t].push_back(b.i);
      dst[t].push_back(b.j);
      src[t].push_back(b.j);
      dst[t].push_back(b.i);
    }
    Tensor ones = Tensor::full(n, d, 1.0);

    for (int l = 0; l < params.layers; ++l) {
      const std::string msg = "msg" + std::to_string(l) + ".";
      const std::string gru = "gru" + std::to_string(l) + ".";
      ValueId m{};
      for (int t = 0; t < kBondTypes; ++t) {
        if (src[t].empty()) continue;
        ValueId part = tape.matmul(tape.gather_rows(h, src[t]), get_param(msg + kBondTypeNames[t]));
        ValueId placed = tape.scatter_add_rows(part, dst[t], n);
        m = m.valid() ? tape.add(m, placed) : placed;
      }
      if (!m.valid()) m = tape.constant(Tensor(n, d)); // isolated atoms: zero message

      ValueId z = tape.sigmoid(tape.add_row(
          tape.add(tape.matmul(m, get_param(gru + "wz")), tape.matmul(h, get_param(gru + "uz"))),
          get_param(gru + "bz")));
      ValueId r = tape.sigmoid(tape.add_row(
          tape.add(tape.matmul(m, get_param(gru + "wr")), tape.matmul(h, get_param(gru + "ur"))),
          get_param(gru + "br")));
      ValueId candidate = tape.tanh(tape.add_row(
          tape.add(tape.matmul(m, get_param(gru + "wh")),
                   tape.matmul(tape.mul(r, h), get_param(gru + "uh"))),
          get_param(gru + "bh")));
      ValueId keep = tape.add(tape.constant(ones), tape.scale(z, -1.0)); // 1 - z
      h = tape.add(tape.mul(keep, h), tape.mul(z, candidate));
      h = apply_dropout(h, l);
    }

    // gated readout over final and input states
    ValueId gate = tape.sigmoid(tape.add_row(
        tape.add(tape.matmul(h, get_param("gate.w_hidden")),
                 tape.matmul(phi, get_param("gate.w_input"))),
        get_param("gate.bias")));
    ValueId emb = tape.tanh(tape.add_row(tape.matmul(h, get_param("emb.w")), get_param("emb.bias")));
    fingerprint = tape.scatter_add_rows(tape.mul(gate, emb), std::vector<int64_t>(n, 0), 1);
  }

  return tape.add(tape.matmul(fingerprint, get_param("head.weight")), get_param("head.bias"));
}

Model::Model(ModelParams params) : params_(std::move(params)) {}

Tensor Model::embed(const MolecularGraph& graph) const {
  const std::vector<int> features = featurize(graph, params_.vocab);
  const Tensor& table = params_.tensors.at("embedding");
  Tensor phi(graph.atom_count(), params_.hidden_dim);
  for (int a = 0; a < graph.atom_count(); ++a)
    for (int c = 0; c < params_.hidden_dim; ++c) phi.at(a, c) = table.at(features[a], c);
  return phi;
}

DropoutMaskSet Model::sample_masks(const MolecularGraph& graph, Rng& rng) const {
  return sample_dropout_masks(graph.atom_count(), params_.hidden_dim, params_.layers,
                              params_.dropout_rate, rng);
}

DropoutMaskSet Model::identity_masks(const MolecularGraph& graph) const {
  DropoutMaskSet set;
  set.scale = 1.0;
  for (int l = 0; l < params_.layers; ++l)
    set.masks.push_back(Tensor::full(graph.atom_count(), params_.hidden_dim, 1.0));
  return set;
}

ValueId Model::build_score(Tape& tape, ValueId phi, const MolecularGraph& graph,
                           const DropoutMaskSet& masks) const {
  std::map<std::string, ValueId> cache;
  auto get_param = [&](const std::string& name) {
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    ValueId id = tape.constant(params_.tensors.at(name));
    cache.emplace(name, id);
    return id;
  };
  return build_architecture(tape, params_, graph, phi, masks, get_param);
}

double Model::score(const MolecularGraph& graph, const DropoutMaskSet& masks) const {
  Tape tape;
  ValueId phi = tape.leaf(embed(graph));
  ValueId out = build_score(tape, phi, graph, masks);
  return tape.value(out).at(0, 0);
}

double Model::score_deterministic(const MolecularGraph& graph) const {
  return score(graph, identity_masks(graph));
}

Model::McPrediction Model::predict_mc(const MolecularGraph& graph, int samples,
                                      uint64_t seed, const ExecPolicy& policy) const {
  if (samples < 1) throw std::invalid_argument("predict: sample count must be >= 1");
  if (params_.dropout_rate == 0.0) {
    // all mask sets are the identity; no sampling needed
    return McPrediction{score_deterministic(graph), 0.0, samples};
  }
  Rng base(seed);
  std::vector<double> slot(static_cast<size_t>(samples));
  run_indexed(samples, policy, [&](int j) {
    Rng stream = base.fork(static_cast<uint64_t>(j));
    slot[static_cast<size_t>(j)] = score(graph, sample_masks(graph, stream));
  });
  double mean = 0.0;
  for (double v : slot) mean += v;
  mean /= samples;
  double var = 0.0;
  for (double v : slot) var += (v - mean) * (v - mean);
  const double stddev = samples > 1 ? std::sqrt(var / (samples - 1)) : 0.0;
  return McPrediction{mean, stddev, samples};
}

} // namespace graphsal

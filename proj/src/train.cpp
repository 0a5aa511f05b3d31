#include "graphsal/train.hpp"

#include <cmath>

#include "graphsal/eval.hpp"

namespace graphsal {

namespace {

// numerically stable logistic loss on the raw score
double logistic_loss(double score, double label) {
  return std::max(score, 0.0) - score * label + std::log1p(std::exp(-std::fabs(score)));
}

struct AdamState {
  Tensor m;
  Tensor v;
};

} // namespace

TrainResult train_model(const std::vector<LabeledMol>& data, const TrainConfig& config,
                        const AtomVocabulary* vocab) {
  if (data.empty()) throw std::invalid_argument("train: empty dataset");
  if (config.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
  if (config.batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");
  if (config.learning_rate <= 0.0) throw std::invalid_argument("train: learning rate must be > 0");
  if (config.task == Task::binary) {
    bool has0 = false, has1 = false;
    for (const LabeledMol& m : data) {
      if (m.label == 0.0) has0 = true;
      else if (m.label == 1.0) has1 = true;
      else throw std::invalid_argument("train: binary task label must be 0 or 1, got " +
                                       std::to_string(m.label));
    }
    if (!has0 || !has1)
      throw std::invalid_argument("train: binary task requires both classes in the data");
  }

  AtomVocabulary built;
  if (!vocab) {
    std::vector<MolecularGraph> graphs;
    graphs.reserve(data.size());
    for (const LabeledMol& m : data) graphs.push_back(m.graph);
    built = AtomVocabulary::build(graphs);
    vocab = &built;
  }

  Rng master(config.seed);
  ModelParams params = init_params(config.kind, config.task, *vocab, config.hidden_dim,
                                   config.layers, config.dropout_rate,
                                   master.fork(0).next_u64());

  std::vector<std::vector<int>> features(data.size());
  for (size_t i = 0; i < data.size(); ++i) features[i] = featurize(data[i].graph, *vocab);

  std::map<std::string, AdamState> adam;
  for (const auto& [name, tensor] : params.tensors)
    adam[name] = AdamState{Tensor(tensor.rows(), tensor.cols()),
                           Tensor(tensor.rows(), tensor.cols())};
  const double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
  int64_t step = 0;

  Rng mask_stream = master.fork(1);
  uint64_t mask_counter = 0;

  TrainResult result;
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < config.epochs; ++epoch) try {
    // seeded Fisher-Yates shuffle, deterministic batch order
    Rng shuffle_rng = master.fork(1000 + static_cast<uint64_t>(epoch));
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.uniform_int(static_cast<int64_t>(i))]);

    double epoch_loss = 0.0;
    std::vector<double> epoch_scores;
    std::vector<double> epoch_targets;
    epoch_scores.reserve(data.size());
    epoch_targets.reserve(data.size());

    for (size_t start = 0; start < order.size(); start += config.batch_size) {
      const size_t stop = std::min(order.size(), start + config.batch_size);
      std::map<std::string, Tensor> grad_acc;

      for (size_t pos = start; pos < stop; ++pos) {
        const LabeledMol& sample = data[order[pos]];
        Tape tape;
        std::map<std::string, ValueId> param_nodes;
        auto get_param = [&](const std::string& name) {
          auto it = param_nodes.find(name);
          if (it != param_nodes.end()) return it->second;
          ValueId id = tape.leaf(params.tensors.at(name));
          param_nodes.emplace(name, id);
          return id;
        };
        ValueId phi = tape.gather_rows(get_param("embedding"),
                                       {features[order[pos]].begin(), features[order[pos]].end()});
        Rng mask_rng = mask_stream.fork(mask_counter++);
        DropoutMaskSet masks =
            config.dropout_rate > 0.0
                ? sample_dropout_masks(sample.graph.atom_count(), config.hidden_dim,
                                       config.layers, config.dropout_rate, mask_rng)
                : DropoutMaskSet{};
        ValueId score_node = build_architecture(tape, params, sample.graph, phi, masks, get_param);
        const double score = tape.value(score_node).at(0, 0);

        double loss, dloss;
        if (config.task == Task::binary) {
          loss = logistic_loss(score, sample.label);
          const double sig = score >= 0.0 ? 1.0 / (1.0 + std::exp(-score))
                                          : std::exp(score) / (1.0 + std::exp(score));
          dloss = sig - sample.label;
        } else {
          const double r = score - sample.label;
          loss = 0.5 * r * r;
          dloss = r;
        }
        if (!std::isfinite(loss))
          throw TrainDivergence("train: non-finite loss at epoch " + std::to_string(epoch) +
                                ", sample " + std::to_string(order[pos]) +
                                " (score=" + std::to_string(score) + ")");
        epoch_loss += loss;
        epoch_scores.push_back(score);
        epoch_targets.push_back(sample.label);

        GradientMap grads = tape.backward(score_node, dloss);
        for (const auto& [name, node] : param_nodes) {
          const Tensor& g = grads.at(node);
          auto it = grad_acc.find(name);
          if (it == grad_acc.end()) {
            grad_acc.emplace(name, g);
          } else {
            Tensor& acc = it->second;
            for (int64_t k = 0; k < acc.size(); ++k) acc.data()[k] += g.data()[k];
          }
        }
      }

      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      ++step;
      const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (auto& [name, acc] : grad_acc) {
        AdamState& state = adam.at(name);
        Tensor& theta = params.tensors.at(name);
        for (int64_t k = 0; k < theta.size(); ++k) {
          const double g = acc.data()[k] * inv_batch;
          state.m.data()[k] = beta1 * state.m.data()[k] + (1.0 - beta1) * g;
          state.v.data()[k] = beta2 * state.v.data()[k] + (1.0 - beta2) * g * g;
          const double mhat = state.m.data()[k] / bc1;
          const double vhat = state.v.data()[k] / bc2;
          theta.data()[k] -= config.learning_rate * mhat / (std::sqrt(vhat) + adam_eps);
        }
        theta.check_finite("train: parameter update");
      }
    }

    EpochStats stats;
    stats.loss = epoch_loss / static_cast<double>(data.size());
    if (config.task == Task::binary) {
      std::vector<int> labels(epoch_targets.size());
      for (size_t i = 0; i < epoch_targets.size(); ++i)
        labels[i] = epoch_targets[i] == 1.0 ? 1 : 0;
      stats.roc_auc = roc_auc(epoch_scores, labels);
    } else {
      stats.mae = mean_abs_error(epoch_scores, epoch_targets);
      try {
        stats.pearson = pearson_correlation(epoch_scores, epoch_targets);
      } catch (const std::invalid_argument&) {
        stats.pearson = 0.0; // degenerate constant predictions early in training
      }
    }
    result.log.push_back(stats);
  } catch (const TrainDivergence&) {
    throw;
  } catch (const std::runtime_error& e) {
    // non-finite values surfacing anywhere in the forward/backward/update
    // chain are divergence, not programming errors
    throw TrainDivergence("train: diverged at epoch " + std::to_string(epoch) + ": " +
                          e.what());
  }

  result.params = std::move(params);
  return result;
}

} // namespace graphsal

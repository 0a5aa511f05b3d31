#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphsal/generator.hpp"
#include "graphsal/gnn.hpp"

namespace graphsal {

struct TrainConfig {
  Task task = Task::binary;
  ModelKind kind = ModelKind::ggnn;
  int epochs = 30;
  int batch_size = 32;
  double learning_rate = 1e-3;
  int hidden_dim = 32;
  int layers = 3;
  double dropout_rate = 0.25;
  uint64_t seed = 0;
};

struct EpochStats {
  double loss = 0.0;
  // binary task
  double roc_auc = 0.0;
  // regression task
  double mae = 0.0;
  double pearson = 0.0;
};

struct TrainResult {
  ModelParams params;
  std::vector<EpochStats> log;
};

// Non-finite training loss; carries where it happened.
class TrainDivergence : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Adam on logistic loss over the raw score (binary) or squared error
// (regression). Dropout masks are resampled for every training forward.
// Single-threaded with a seeded shuffle: the same seed yields bitwise
// identical parameters. If `vocab` is null it is built from the data.
TrainResult train_model(const std::vector<LabeledMol>& data, const TrainConfig& config,
                        const AtomVocabulary* vocab = nullptr);

} // namespace graphsal

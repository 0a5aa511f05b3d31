#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphsal/exec.hpp"
#include "graphsal/molgraph.hpp"
#include "graphsal/rng.hpp"
#include "graphsal/tape.hpp"
#include "graphsal/tensor.hpp"

namespace graphsal {

enum class ModelKind { nfp, ggnn };
enum class Task { binary, regression };

const char* model_kind_name(ModelKind kind);
const char* task_name(Task task);
ModelKind model_kind_from_name(const std::string& name);
Task task_from_name(const std::string& name);

// One binary mask per convolution round plus the inverted-dropout scale.
// Masks are fixed for the duration of one forward+backward: one mask set
// realizes one posterior weight sample. An empty mask list means dropout
// is disabled for the pass.
struct DropoutMaskSet {
  std::vector<Tensor> masks;
  double scale = 1.0;
};

// Embedding table, per-layer convolution weights, readout weights and the
// linear head, keyed by name for uniform optimizer/serialization
// treatment. Immutable snapshots of this struct may be shared across
// concurrent forward passes.
struct ModelParams {
  ModelKind kind = ModelKind::ggnn;
  Task task = Task::binary;
  int hidden_dim = 32;
  int layers = 3;
  double dropout_rate = 0.25;
  AtomVocabulary vocab;
  std::map<std::string, Tensor> tensors;
};

// Glorot-initialized parameters; deterministic from the seed.
ModelParams init_params(ModelKind kind, Task task, const AtomVocabulary& vocab,
                        int hidden_dim, int layers, double dropout_rate, uint64_t seed);

// Anything the saliency estimators can differentiate: embeds a molecule
// into the continuous feature matrix (the gradient leaf) and builds the
// scalar raw score on a tape. The score is pre-sigmoid for binary models.
class Scorer {
public:
  virtual ~Scorer() = default;

  virtual double dropout_rate() const = 0;
  // atoms x d feature matrix the gradient is taken with respect to
  virtual Tensor embed(const MolecularGraph& graph) const = 0;
  virtual DropoutMaskSet sample_masks(const MolecularGraph& graph, Rng& rng) const = 0;
  virtual DropoutMaskSet identity_masks(const MolecularGraph& graph) const = 0;
  // phi must already be registered on the tape by the caller
  virtual ValueId build_score(Tape& tape, ValueId phi, const MolecularGraph& graph,
                              const DropoutMaskSet& masks) const = 0;
};

// Trained model over frozen parameters.
class Model : public Scorer {
public:
  explicit Model(ModelParams params);

  const ModelParams& params() const { return params_; }

  double dropout_rate() const override { return params_.dropout_rate; }
  Tensor embed(const MolecularGraph& graph) const override;
  DropoutMaskSet sample_masks(const MolecularGraph& graph, Rng& rng) const override;
  DropoutMaskSet identity_masks(const MolecularGraph& graph) const override;
  ValueId build_score(Tape& tape, ValueId phi, const MolecularGraph& graph,
                      const DropoutMaskSet& masks) const override;

  // forward value with the given masks
  double score(const MolecularGraph& graph, const DropoutMaskSet& masks) const;
  // all-ones-mask forward (dropout off)
  double score_deterministic(const MolecularGraph& graph) const;

  struct McPrediction {
    double mean = 0.0;
    double stddev = 0.0;
    int samples = 0;
  };
  // Monte-Carlo dropout prediction over `samples` independent mask sets.
  // Sample means are reduced in index order, so the result is independent
  // of the execution policy.
  McPrediction predict_mc(const MolecularGraph& graph, int samples, uint64_t seed,
                          const ExecPolicy& policy = ExecPolicy::serial()) const;

private:
  ModelParams params_;
};

// Shared architecture core. `get_param` supplies tape nodes for named
// parameter tensors (leaves during training, constants at inference).
ValueId build_architecture(Tape& tape, const ModelParams& params,
                           const MolecularGraph& graph, ValueId phi,
                           const DropoutMaskSet& masks,
                           const std::function<ValueId(const std::string&)>& get_param);

// Masks for one molecule: layers tensors of shape atoms x hidden_dim,
// entries 1 with probability 1-p, inverted-dropout scale 1/(1-p).
// p == 0 yields the all-ones set with scale 1 without consuming rng.
DropoutMaskSet sample_dropout_masks(int atoms, int hidden_dim, int layers, double rate,
                                    Rng& rng);

} // namespace graphsal

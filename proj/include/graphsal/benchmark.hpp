#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphsal/eval.hpp"
#include "graphsal/exec.hpp"
#include "graphsal/saliency.hpp"
#include "graphsal/train.hpp"

namespace graphsal {

// One estimator configuration evaluated in the benchmark.
struct MethodSpec {
  SaliencyMethod method = SaliencyMethod::vanilla;
  SmoothSpec smooth;
  int mask_samples = 100;
  Norm norm = Norm::l2;

  std::string display_name() const;
};

// Molecule with ground-truth motif atoms, fixed across repeats.
struct EvalMolecule {
  MolecularGraph graph;
  std::vector<int> truth_atoms;
  std::string smiles;
};

struct BenchmarkConfig {
  int subset_size = 1000;
  int repeats = 30;
  std::vector<MethodSpec> methods; // empty selects all four defaults
  TrainConfig train;
  uint64_t seed = 0;
  double max_failed_fraction = 0.2;
};

// Mean and standard deviation of pooled PRC-AUC per method over repeated
// trainings on random subsets. All methods are evaluated on the same
// trained model within each repeat (paired comparison).
struct BenchmarkReport {
  struct MethodRow {
    std::string method;
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> per_repeat; // NaN-free: failed repeats excluded
  };
  std::vector<MethodRow> rows;
  int repeats = 0;
  int subset_size = 0;
  uint64_t seed = 0;
  std::vector<int> failed_repeat_indices;
};

// Per-molecule saliency scores for one estimator configuration; molecules
// are independent and run under the policy with per-index seeds.
std::vector<std::vector<double>> saliency_scores_for(
    const Model& model, const std::vector<EvalMolecule>& eval_set, const MethodSpec& spec,
    uint64_t seed, const ExecPolicy& policy = ExecPolicy::serial());

std::vector<MethodSpec> default_benchmark_methods(const SmoothSpec& smooth, int mask_samples,
                                                  Norm norm);

// Repeats are independent: each samples a derived-seed subset of the
// pool, trains a fresh model, and scores every method on the fixed eval
// set. Training divergence marks the repeat failed and excludes it from
// the aggregates. Bitwise reproducible from the seed under any policy.
BenchmarkReport benchmark_run(const std::vector<LabeledMol>& pool,
                              const std::vector<EvalMolecule>& eval_set,
                              const BenchmarkConfig& config,
                              const ExecPolicy& policy = ExecPolicy::serial());

std::string benchmark_report_table(const BenchmarkReport& report);
std::string benchmark_report_json(const BenchmarkReport& report);
// method x repeat PRC-AUC matrix
std::string benchmark_report_csv(const BenchmarkReport& report);

} // namespace graphsal

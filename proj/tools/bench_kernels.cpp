// Times the serial reference path against the OpenMP path for the
// sample-parallel kernels (saliency sampling, MC prediction, per-molecule
// batch scoring) and verifies they produce identical bits.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "graphsal/benchmark.hpp"
#include "graphsal/generator.hpp"
#include "graphsal/gnn.hpp"
#include "graphsal/saliency.hpp"

using namespace graphsal;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name, serial_s,
              parallel_s, serial_s / parallel_s, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
  const ExecPolicy parallel = ExecPolicy::from_env();
  std::printf("worker threads: %d (set GRAPHSAL_THREADS to change)\n\n", parallel.threads);

  GeneratorConfig gen;
  gen.count = 64;
  gen.min_atoms = 16;
  gen.max_atoms = 28;
  gen.seed = 12;
  const auto mols = generate_motif_dataset(gen);

  AtomVocabulary vocab;
  {
    std::vector<MolecularGraph> graphs;
    for (const auto& m : mols) graphs.push_back(m.graph);
    vocab = AtomVocabulary::build(graphs);
  }
  Model model(init_params(ModelKind::ggnn, Task::binary, vocab, 32, 3, 0.25, 5));
  const MolecularGraph& big = mols[0].graph;

  {
    SaliencyResult serial_result, parallel_result;
    const double ts = seconds([&] {
      serial_result = bayes_grad(model, big, 512, Norm::l2, 7, ExecPolicy::serial());
    });
    const double tp = seconds([&] {
      parallel_result = bayes_grad(model, big, 512, Norm::l2, 7, parallel);
    });
    report("bayes_grad M=512", ts, tp,
           serial_result.scores == parallel_result.scores &&
               serial_result.stddev == parallel_result.stddev);
  }

  {
    SaliencyResult serial_result, parallel_result;
    const SmoothSpec spec{0.15, 24};
    const double ts = seconds([&] {
      serial_result =
          bayes_smooth_grad(model, big, spec, 24, Norm::l2, 7, ExecPolicy::serial());
    });
    const double tp = seconds([&] {
      parallel_result = bayes_smooth_grad(model, big, spec, 24, Norm::l2, 7, parallel);
    });
    report("bayes_smooth 24x24", ts, tp, serial_result.scores == parallel_result.scores);
  }

  {
    Model::McPrediction serial_result, parallel_result;
    const double ts = seconds(
        [&] { serial_result = model.predict_mc(big, 2048, 3, ExecPolicy::serial()); });
    const double tp = seconds([&] { parallel_result = model.predict_mc(big, 2048, 3, parallel); });
    report("predict_mc M=2048", ts, tp,
           serial_result.mean == parallel_result.mean &&
               serial_result.stddev == parallel_result.stddev);
  }

  {
    std::vector<EvalMolecule> eval_set;
    for (const auto& m : mols) eval_set.push_back(EvalMolecule{m.graph, {0}, ""});
    MethodSpec spec;
    spec.method = SaliencyMethod::bayes;
    spec.mask_samples = 48;
    std::vector<std::vector<double>> serial_result, parallel_result;
    const double ts = seconds([&] {
      serial_result = saliency_scores_for(model, eval_set, spec, 9, ExecPolicy::serial());
    });
    const double tp = seconds(
        [&] { parallel_result = saliency_scores_for(model, eval_set, spec, 9, parallel); });
    report("dataset saliency 64 mols", ts, tp, serial_result == parallel_result);
  }

  return 0;
}

#include "graphsal/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace graphsal {

std::string MethodSpec::display_name() const {
  switch (method) {
    case SaliencyMethod::vanilla: return "VanillaGrad";
    case SaliencyMethod::smooth: return "SmoothGrad";
    case SaliencyMethod::bayes: return "BayesGrad";
    case SaliencyMethod::bayes_smooth: return "BayesSmoothGrad";
  }
  return "VanillaGrad";
}

std::vector<MethodSpec> default_benchmark_methods(const SmoothSpec& smooth, int mask_samples,
                                                  Norm norm) {
  std::vector<MethodSpec> methods(4);
  methods[0] = MethodSpec{SaliencyMethod::vanilla, smooth, mask_samples, norm};
  methods[1] = MethodSpec{SaliencyMethod::smooth, smooth, mask_samples, norm};
  methods[2] = MethodSpec{SaliencyMethod::bayes, smooth, mask_samples, norm};
  methods[3] = MethodSpec{SaliencyMethod::bayes_smooth,
                          SmoothSpec{smooth.sigma, std::max(1, smooth.samples / 10)},
                          std::max(1, mask_samples / 10), norm};
  return methods;
}

std::vector<std::vector<double>> saliency_scores_for(const Model& model,
                                                     const std::vector<EvalMolecule>& eval_set,
                                                     const MethodSpec& spec, uint64_t seed,
                                                     const ExecPolicy& policy) {
  std::vector<std::vector<double>> scores(eval_set.size());
  Rng base(seed);
  run_indexed(static_cast<int>(eval_set.size()), policy, [&](int i) {
    const uint64_t mol_seed = base.fork(static_cast<uint64_t>(i)).next_u64();
    const EvalMolecule& mol = eval_set[static_cast<size_t>(i)];
    SaliencyResult r;
    switch (spec.method) {
      case SaliencyMethod::vanilla:
        r = vanilla_grad(model, mol.graph, spec.norm);
        break;
      case SaliencyMethod::smooth:
        r = smooth_grad(model, mol.graph, spec.smooth, spec.norm, mol_seed);
        break;
      case SaliencyMethod::bayes:
        r = bayes_grad(model, mol.graph, spec.mask_samples, spec.norm, mol_seed);
        break;
      case SaliencyMethod::bayes_smooth:
        r = bayes_smooth_grad(model, mol.graph, spec.smooth, spec.mask_samples, spec.norm,
                              mol_seed);
        break;
    }
    scores[static_cast<size_t>(i)] = std::move(r.scores);
  });
  return scores;
}

BenchmarkReport benchmark_run(const std::vector<LabeledMol>& pool,
                              const std::vector<EvalMolecule>& eval_set,
                              const BenchmarkConfig& config, const ExecPolicy& policy) {
  if (static_cast<int>(pool.size()) <= config.subset_size)
    throw std::invalid_argument("benchmark: pool of " + std::to_string(pool.size()) +
                                " molecules is not larger than subset_size " +
                                std::to_string(config.subset_size));
  if (config.repeats < 2) throw std::invalid_argument("benchmark: repeats must be >= 2");
  if (eval_set.empty()) throw std::invalid_argument("benchmark: empty eval set");
  for (const EvalMolecule& m : eval_set)
    if (m.truth_atoms.empty())
      throw std::invalid_argument("benchmark: eval molecule without truth atoms");

  const std::vector<MethodSpec> methods =
      config.methods.empty() ? default_benchmark_methods(SmoothSpec{}, 100, Norm::l2)
                             : config.methods;

  std::vector<std::vector<int>> truths;
  truths.reserve(eval_set.size());
  for (const EvalMolecule& m : eval_set) truths.push_back(m.truth_atoms);

  Rng master(config.seed);
  const int repeats = config.repeats;
  // cells[method][repeat]; NaN marks a failed repeat until filtering
  std::vector<std::vector<double>> cells(methods.size(),
                                         std::vector<double>(static_cast<size_t>(repeats)));
  std::vector<char> failed(static_cast<size_t>(repeats), 0);

  run_indexed(repeats, policy, [&](int r) {
    // derived-seed subset without replacement
    Rng subset_rng = master.fork(10000 + static_cast<uint64_t>(r));
    std::vector<size_t> indices(pool.size());
    for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    for (int k = 0; k < config.subset_size; ++k) {
      const size_t pick = static_cast<size_t>(k) +
                          static_cast<size_t>(subset_rng.uniform_int(
                              static_cast<int64_t>(indices.size() - static_cast<size_t>(k))));
      std::swap(indices[static_cast<size_t>(k)], indices[pick]);
    }
    std::vector<LabeledMol> subset;
    subset.reserve(static_cast<size_t>(config.subset_size));
    for (int k = 0; k < config.subset_size; ++k) subset.push_back(pool[indices[static_cast<size_t>(k)]]);

    TrainConfig tc = config.train;
    tc.seed = master.fork(20000 + static_cast<uint64_t>(r)).next_u64();
    Model model{ModelParams{}};
    try {
      model = Model(train_model(subset, tc).params);
    } catch (const TrainDivergence&) {
      failed[static_cast<size_t>(r)] = 1;
      return;
    }

    for (size_t m = 0; m < methods.size(); ++m) {
      // seed depends on the method identity, not its list position, so
      // reordering the method list cannot change any aggregate
      const uint64_t method_seed =
          master.fork(30000 + static_cast<uint64_t>(r) * 101 +
                      static_cast<uint64_t>(methods[m].method))
              .next_u64();
      const auto scores = saliency_scores_for(model, eval_set, methods[m], method_seed);
      cells[m][static_cast<size_t>(r)] = prc_auc(saliency_pr_curve(scores, truths));
    }
  });

  BenchmarkReport report;
  report.repeats = repeats;
  report.subset_size = config.subset_size;
  report.seed = config.seed;
  for (int r = 0; r < repeats; ++r)
    if (failed[static_cast<size_t>(r)]) report.failed_repeat_indices.push_back(r);

  for (size_t m = 0; m < methods.size(); ++m) {
    BenchmarkReport::MethodRow row;
    row.method = methods[m].display_name();
    for (int r = 0; r < repeats; ++r)
      if (!failed[static_cast<size_t>(r)]) row.per_repeat.push_back(cells[m][static_cast<size_t>(r)]);
    if (row.per_repeat.empty())
      throw std::runtime_error("benchmark: every repeat failed to train");
    double mean = 0.0;
    for (double v : row.per_repeat) mean += v;
    mean /= static_cast<double>(row.per_repeat.size());
    double var = 0.0;
    for (double v : row.per_repeat) var += (v - mean) * (v - mean);
    row.mean = mean;
    row.stddev = row.per_repeat.size() > 1
                     ? std::sqrt(var / static_cast<double>(row.per_repeat.size() - 1))
                     : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string benchmark_report_table(const BenchmarkReport& report) {
  std::ostringstream out;
  size_t width = 9;
  for (const auto& row : report.rows) width = std::max(width, row.method.size());
  out << "Algorithm";
  for (size_t i = 9; i < width + 2; ++i) out << ' ';
  out << "PRC-AUC score\n";
  for (const auto& row : report.rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f +- %.3f", row.mean, row.stddev);
    out << row.method;
    for (size_t i = row.method.size(); i < width + 2; ++i) out << ' ';
    out << buf << '\n';
  }
  if (!report.failed_repeat_indices.empty())
    out << "failed repeats: " << report.failed_repeat_indices.size() << " of "
        << report.repeats << '\n';
  return out.str();
}

std::string benchmark_report_json(const BenchmarkReport& report) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["repeats"] = report.repeats;
  j["subset_size"] = report.subset_size;
  j["seed"] = report.seed;
  j["failed_repeat_indices"] = report.failed_repeat_indices;
  j["methods"] = nlohmann::json::array();
  for (const auto& row : report.rows)
    j["methods"].push_back({{"method", row.method},
                            {"mean", row.mean},
                            {"std", row.stddev},
                            {"per_repeat", row.per_repeat}});
  return j.dump(1);
}

std::string benchmark_report_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "method";
  if (!report.rows.empty())
    for (size_t r = 0; r < report.rows[0].per_repeat.size(); ++r) out << ",repeat" << r;
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.method;
    for (double v : row.per_repeat) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

} // namespace graphsal

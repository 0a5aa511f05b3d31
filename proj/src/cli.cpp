#include "graphsal/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphsal/benchmark.hpp"
#include "graphsal/csv.hpp"
#include "graphsal/eval.hpp"
#include "graphsal/generator.hpp"
#include "graphsal/model_io.hpp"
#include "graphsal/motif.hpp"
#include "graphsal/render.hpp"
#include "graphsal/saliency.hpp"
#include "graphsal/train.hpp"

namespace graphsal {

namespace {

using nlohmann::json;

std::vector<LabeledMol> load_dataset(const std::string& path) {
  std::vector<LabeledMol> data;
  for (const DatasetRow& row : read_dataset_csv(path)) {
    try {
      data.push_back(LabeledMol{parse_smiles(row.smiles), row.label});
    } catch (const ParseError& e) {
      throw std::runtime_error(path + ": cannot parse smiles '" + row.smiles +
                               "': " + e.what());
    }
  }
  if (data.empty()) throw std::runtime_error(path + ": dataset has no rows");
  return data;
}

// union of motif embedding atoms per molecule; empty when no match
std::vector<int> truth_atoms_for(const MolecularGraph& graph, const MolecularGraph& motif) {
  std::set<int> atoms;
  for (const auto& embedding : match_motif(graph, motif))
    atoms.insert(embedding.begin(), embedding.end());
  return {atoms.begin(), atoms.end()};
}

struct EstimatorFlags {
  std::string method = "vanilla";
  double sigma = 0.15;
  int samples = 100;
  int mask_samples = 0; // 0: follow --samples
  std::string norm = "l2";
  uint64_t seed = 0;

  MethodSpec to_spec() const {
    MethodSpec spec;
    spec.method = saliency_method_from_name(method);
    spec.smooth = SmoothSpec{sigma, samples};
    spec.mask_samples = mask_samples > 0 ? mask_samples : samples;
    spec.norm = norm_from_name(norm);
    return spec;
  }
};

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& flags, bool with_method = true) {
  if (with_method)
    cmd->add_option("--method", flags.method,
                    "saliency method: vanilla|smooth|bayes|bayes-smooth")
        ->default_val(flags.method);
  cmd->add_option("--sigma", flags.sigma, "gaussian noise std for smoothed estimators")
      ->default_val(flags.sigma);
  cmd->add_option("--samples", flags.samples, "monte-carlo sample count M")
      ->default_val(flags.samples);
  cmd->add_option("--mask-samples", flags.mask_samples,
                  "dropout sample count for bayes-smooth (default: --samples)");
  cmd->add_option("--norm", flags.norm, "gradient norm: l1|l2")->default_val(flags.norm);
  cmd->add_option("--seed", flags.seed, "random seed")->default_val(flags.seed);
}

SaliencyResult run_estimator(const Model& model, const MolecularGraph& graph,
                             const EstimatorFlags& flags, bool signed_mode,
                             const ExecPolicy& policy) {
  const MethodSpec spec = flags.to_spec();
  if (signed_mode) {
    Tensor baseline(graph.atom_count(), model.params().hidden_dim); // b = 0
    return signed_scores(model, graph, baseline, spec.method, spec.smooth, spec.mask_samples,
                         flags.seed, policy);
  }
  switch (spec.method) {
    case SaliencyMethod::vanilla: return vanilla_grad(model, graph, spec.norm, policy);
    case SaliencyMethod::smooth:
      return smooth_grad(model, graph, spec.smooth, spec.norm, flags.seed, policy);
    case SaliencyMethod::bayes:
      return bayes_grad(model, graph, spec.mask_samples, spec.norm, flags.seed, policy);
    case SaliencyMethod::bayes_smooth:
      return bayes_smooth_grad(model, graph, spec.smooth, spec.mask_samples, spec.norm,
                               flags.seed, policy);
  }
  throw std::logic_error("unreachable");
}

int cmd_generate(const std::string& out, const GeneratorConfig& config) {
  const auto data = generate_motif_dataset(config);
  std::vector<DatasetRow> rows;
  rows.reserve(data.size());
  for (const LabeledMol& m : data) rows.push_back(DatasetRow{write_smiles(m.graph), m.label});
  write_dataset_csv(out, rows);
  int positives = 0;
  for (const LabeledMol& m : data) positives += m.label == 1.0;
  std::cout << "wrote " << rows.size() << " molecules to " << out << " (" << positives
            << " positive)\n";
  return 0;
}

int cmd_train(const std::string& dataset_path, const std::string& val_path,
              const TrainConfig& config, const std::string& model_out,
              const std::string& metrics_out) {
  const auto data = load_dataset(dataset_path);
  TrainResult result = train_model(data, config);

  json metrics;
  metrics["format_version"] = 1;
  metrics["task"] = task_name(config.task);
  metrics["model_kind"] = model_kind_name(config.kind);
  metrics["epochs"] = json::array();
  for (const EpochStats& e : result.log) {
    json entry{{"loss", e.loss}};
    if (config.task == Task::binary) {
      entry["roc_auc"] = e.roc_auc;
    } else {
      entry["mae"] = e.mae;
      entry["pearson"] = e.pearson;
    }
    metrics["epochs"].push_back(std::move(entry));
  }

  if (!val_path.empty()) {
    const auto val = load_dataset(val_path);
    Model model(result.params);
    std::vector<double> scores;
    std::vector<double> targets;
    for (const LabeledMol& m : val) {
      scores.push_back(model.score_deterministic(m.graph));
      targets.push_back(m.label);
    }
    json v;
    if (config.task == Task::binary) {
      std::vector<int> labels(targets.size());
      for (size_t i = 0; i < targets.size(); ++i) labels[i] = targets[i] == 1.0 ? 1 : 0;
      v["roc_auc"] = roc_auc(scores, labels);
    } else {
      v["mae"] = mean_abs_error(scores, targets);
      v["pearson"] = pearson_correlation(scores, targets);
    }
    metrics["validation"] = std::move(v);
  }

  save_model(result.params, model_out);
  if (!metrics_out.empty()) write_file_atomic(metrics_out, metrics.dump(1));

  const EpochStats& last = result.log.back();
  std::cout << "trained " << model_kind_name(config.kind) << " for " << config.epochs
            << " epochs; final loss " << last.loss;
  if (config.task == Task::binary) std::cout << ", train roc-auc " << last.roc_auc;
  else std::cout << ", train mae " << last.mae << ", pearson " << last.pearson;
  std::cout << "\nmodel written to " << model_out << '\n';
  return 0;
}

int cmd_explain(const std::string& model_path, const std::string& smiles,
                const EstimatorFlags& flags, bool signed_mode, const std::string& json_out,
                const std::string& svg_out) {
  Model model(load_model(model_path));
  const MolecularGraph graph = parse_smiles(smiles);
  const SaliencyResult result =
      run_estimator(model, graph, flags, signed_mode, ExecPolicy::from_env());

  write_file_atomic(json_out, saliency_result_to_json(result, smiles));
  write_file_atomic(svg_out,
                    render_molecule_svg(graph, result.scores, result.is_signed));

  std::cout << "scores:";
  for (double s : result.scores) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " %.4f", s);
    std::cout << buf;
  }
  std::cout << "\nwrote " << json_out << " and " << svg_out << '\n';
  return 0;
}

int cmd_eval_saliency(const std::string& model_path, const std::string& dataset_path,
                      const std::string& motif_smiles, const EstimatorFlags& flags,
                      bool per_molecule_average, const std::string& report_out) {
  Model model(load_model(model_path));
  const MolecularGraph motif = parse_smiles(motif_smiles);
  const auto data = load_dataset(dataset_path);

  std::vector<EvalMolecule> eval_set;
  for (const LabeledMol& m : data) {
    std::vector<int> truth = truth_atoms_for(m.graph, motif);
    if (truth.empty()) continue;
    eval_set.push_back(EvalMolecule{m.graph, std::move(truth), write_smiles(m.graph)});
  }
  if (eval_set.empty())
    throw std::runtime_error("no positive molecules: motif '" + motif_smiles +
                             "' not found in any dataset molecule");

  const auto scores = saliency_scores_for(model, eval_set, flags.to_spec(), flags.seed,
                                          ExecPolicy::from_env());
  std::vector<std::vector<int>> truths;
  truths.reserve(eval_set.size());
  for (const EvalMolecule& m : eval_set) truths.push_back(m.truth_atoms);

  const PRCurve curve = saliency_pr_curve(scores, truths);
  const double auc = prc_auc(curve);

  std::cout << "molecules evaluated: " << eval_set.size() << "\n";
  std::cout << "truth atoms: " << curve.truth_atoms << " of " << curve.total_atoms << "\n";
  std::cout << "recall precision threshold\n";
  for (const PRPoint& p : curve.points) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f %.4f %.4f\n", p.recall, p.precision, p.threshold);
    std::cout << buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "PRC-AUC: %.6f\n", auc);
  std::cout << buf;

  json report;
  report["format_version"] = 1;
  report["method"] = flags.method;
  report["molecules"] = eval_set.size();
  report["prc_auc"] = auc;
  report["truth_atoms"] = curve.truth_atoms;
  report["total_atoms"] = curve.total_atoms;
  report["points"] = json::array();
  for (const PRPoint& p : curve.points)
    report["points"].push_back(
        {{"recall", p.recall}, {"precision", p.precision}, {"threshold", p.threshold}});
  if (per_molecule_average) {
    std::vector<std::vector<double>> per_scores(scores.begin(), scores.end());
    const double averaged = per_molecule_average_prc_auc(per_scores, truths);
    std::snprintf(buf, sizeof buf, "per-molecule mean PRC-AUC: %.6f\n", averaged);
    std::cout << buf;
    report["per_molecule_average_prc_auc"] = averaged;
  }
  if (!report_out.empty()) write_file_atomic(report_out, report.dump(1));
  return 0;
}

int cmd_benchmark(const std::string& dataset_path, const std::string& motif_smiles,
                  BenchmarkConfig config, const EstimatorFlags& flags, int eval_count,
                  const std::string& json_out, const std::string& csv_out) {
  const MolecularGraph motif = parse_smiles(motif_smiles);
  auto data = load_dataset(dataset_path);

  // fixed held-out slice (seeded shuffle), eval positives taken from it
  Rng split_rng = Rng(config.seed).fork(999);
  for (size_t i = data.size(); i > 1; --i)
    std::swap(data[i - 1], data[split_rng.uniform_int(static_cast<int64_t>(i))]);
  if (eval_count >= static_cast<int>(data.size()))
    throw std::runtime_error("benchmark: --eval-count consumes the whole dataset");

  std::vector<EvalMolecule> eval_set;
  for (int i = 0; i < eval_count; ++i) {
    std::vector<int> truth = truth_atoms_for(data[i].graph, motif);
    if (truth.empty()) continue;
    eval_set.push_back(EvalMolecule{data[i].graph, std::move(truth), write_smiles(data[i].graph)});
  }
  if (eval_set.empty())
    throw std::runtime_error("no positive molecules: motif '" + motif_smiles +
                             "' not found in the held-out slice");
  std::vector<LabeledMol> pool(data.begin() + eval_count, data.end());

  const MethodSpec base = flags.to_spec();
  config.methods = default_benchmark_methods(base.smooth, base.mask_samples, base.norm);

  const BenchmarkReport report = benchmark_run(pool, eval_set, config, ExecPolicy::from_env());
  std::cout << benchmark_report_table(report);
  if (!json_out.empty()) write_file_atomic(json_out, benchmark_report_json(report));
  if (!csv_out.empty()) write_file_atomic(csv_out, benchmark_report_csv(report));

  const double failed_fraction =
      static_cast<double>(report.failed_repeat_indices.size()) / config.repeats;
  if (failed_fraction > config.max_failed_fraction) {
    std::cerr << "error: " << report.failed_repeat_indices.size() << " of " << config.repeats
              << " repeats failed to train\n";
    return 1;
  }
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"dropout graph networks with gradient-based saliency maps"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic planted-motif dataset CSV");
  GeneratorConfig gen;
  std::string gen_out = "dataset.csv";
  generate->add_option("--count", gen.count, "molecule count")->default_val(gen.count);
  generate->add_option("--motif", gen.motif_smiles, "planted motif SMILES")
      ->default_val(gen.motif_smiles);
  generate->add_option("--min-atoms", gen.min_atoms)->default_val(gen.min_atoms);
  generate->add_option("--max-atoms", gen.max_atoms)->default_val(gen.max_atoms);
  generate->add_option("--base-rate", gen.positive_rate, "positive fraction")
      ->default_val(gen.positive_rate);
  generate->add_option("--decoy-rate", gen.decoy_ring_rate, "benzene decoy fraction")
      ->default_val(gen.decoy_ring_rate);
  generate->add_option("--seed", gen.seed)->default_val(gen.seed);
  generate->add_option("--out", gen_out, "output CSV path")->default_val(gen_out);

  // train
  auto* train = app.add_subcommand("train", "train a model on a smiles,label CSV");
  TrainConfig tc;
  std::string train_dataset, train_val, train_task = "binary", train_model_kind = "ggnn";
  std::string model_out = "model.json", metrics_out = "metrics.json";
  train->add_option("--dataset", train_dataset, "training CSV")->required();
  train->add_option("--val", train_val, "optional validation CSV");
  train->add_option("--task", train_task, "binary|regression")->default_val(train_task);
  train->add_option("--model", train_model_kind, "nfp|ggnn")->default_val(train_model_kind);
  train->add_option("--epochs", tc.epochs)->default_val(tc.epochs);
  train->add_option("--batch-size", tc.batch_size)->default_val(tc.batch_size);
  train->add_option("--lr", tc.learning_rate)->default_val(tc.learning_rate);
  train->add_option("--hidden-dim", tc.hidden_dim)->default_val(tc.hidden_dim);
  train->add_option("--layers", tc.layers)->default_val(tc.layers);
  train->add_option("--dropout", tc.dropout_rate)->default_val(tc.dropout_rate);
  train->add_option("--seed", tc.seed)->default_val(tc.seed);
  train->add_option("--out", model_out, "model JSON path")->default_val(model_out);
  train->add_option("--metrics", metrics_out, "metrics JSON path")->default_val(metrics_out);

  // explain
  auto* explain = app.add_subcommand("explain", "saliency scores and SVG for one molecule");
  EstimatorFlags explain_flags;
  std::string explain_model, explain_smiles;
  std::string scores_out = "scores.json", svg_out = "map.svg";
  bool signed_mode = false;
  explain->add_option("--model", explain_model, "model JSON")->required();
  explain->add_option("--smiles", explain_smiles, "molecule SMILES")->required();
  add_estimator_flags(explain, explain_flags);
  explain->add_flag("--signed", signed_mode,
                    "signed input-times-gradient scores against the zero baseline");
  explain->add_option("--out-json", scores_out)->default_val(scores_out);
  explain->add_option("--out-svg", svg_out)->default_val(svg_out);

  // eval-saliency
  auto* evalcmd = app.add_subcommand("eval-saliency",
                                     "precision-recall of saliency against a motif");
  EstimatorFlags eval_flags;
  std::string eval_model, eval_dataset, eval_motif = "c1ccncc1", eval_report;
  bool per_molecule_average = false;
  evalcmd->add_option("--model", eval_model, "model JSON")->required();
  evalcmd->add_option("--dataset", eval_dataset, "evaluation CSV")->required();
  evalcmd->add_option("--motif", eval_motif, "ground-truth motif SMILES")
      ->default_val(eval_motif);
  add_estimator_flags(evalcmd, eval_flags);
  evalcmd->add_flag("--per-molecule-average", per_molecule_average,
                    "also report the mean of per-molecule PRC-AUCs");
  evalcmd->add_option("--out", eval_report, "report JSON path");

  // benchmark
  auto* bench = app.add_subcommand("benchmark",
                                   "repeated-subset benchmark of all four estimators");
  EstimatorFlags bench_flags;
  BenchmarkConfig bc;
  std::string bench_dataset, bench_motif = "c1ccncc1", bench_json, bench_csv;
  int eval_count = 100;
  bench->add_option("--dataset", bench_dataset, "dataset CSV")->required();
  bench->add_option("--motif", bench_motif)->default_val(bench_motif);
  bench->add_option("--subset-size", bc.subset_size)->default_val(bc.subset_size);
  bench->add_option("--repeats", bc.repeats)->default_val(bc.repeats);
  bench->add_option("--eval-count", eval_count, "held-out slice size")->default_val(eval_count);
  bench->add_option("--epochs", bc.train.epochs)->default_val(bc.train.epochs);
  bench->add_option("--batch-size", bc.train.batch_size)->default_val(bc.train.batch_size);
  bench->add_option("--lr", bc.train.learning_rate)->default_val(bc.train.learning_rate);
  bench->add_option("--hidden-dim", bc.train.hidden_dim)->default_val(bc.train.hidden_dim);
  bench->add_option("--layers", bc.train.layers)->default_val(bc.train.layers);
  bench->add_option("--dropout", bc.train.dropout_rate)->default_val(bc.train.dropout_rate);
  std::string bench_model_kind = "ggnn";
  bench->add_option("--model-kind", bench_model_kind, "nfp|ggnn")->default_val(bench_model_kind);
  add_estimator_flags(bench, bench_flags, /*with_method=*/false);
  bench->add_option("--out", bench_json, "report JSON path");
  bench->add_option("--csv", bench_csv, "method x repeat PRC-AUC matrix CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_out, gen);
    if (train->parsed()) {
      tc.task = task_from_name(train_task);
      tc.kind = model_kind_from_name(train_model_kind);
      return cmd_train(train_dataset, train_val, tc, model_out, metrics_out);
    }
    if (explain->parsed())
      return cmd_explain(explain_model, explain_smiles, explain_flags, signed_mode, scores_out,
                         svg_out);
    if (evalcmd->parsed())
      return cmd_eval_saliency(eval_model, eval_dataset, eval_motif, eval_flags,
                               per_molecule_average, eval_report);
    if (bench->parsed()) {
      bc.train.task = Task::binary;
      bc.train.kind = model_kind_from_name(bench_model_kind);
      bc.seed = bench_flags.seed;
      return cmd_benchmark(bench_dataset, bench_motif, bc, bench_flags, eval_count, bench_json,
                           bench_csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace graphsal

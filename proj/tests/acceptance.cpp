// Acceptance suite: each criterion prints exactly one PASS/FAIL line.
// Run with no arguments for all criteria, or pass criterion numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "graphsal/benchmark.hpp"
#include "graphsal/eval.hpp"
#include "graphsal/generator.hpp"
#include "graphsal/gnn.hpp"
#include "graphsal/grad_check.hpp"
#include "graphsal/model_io.hpp"
#include "graphsal/motif.hpp"
#include "graphsal/saliency.hpp"
#include "graphsal/train.hpp"

using namespace graphsal;

#ifndef GRAPHSAL_FIXTURE_DIR
#define GRAPHSAL_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::vector<int> truth_union(const MolecularGraph& graph, const MolecularGraph& motif) {
  std::set<int> atoms;
  for (const auto& embedding : match_motif(graph, motif))
    atoms.insert(embedding.begin(), embedding.end());
  return {atoms.begin(), atoms.end()};
}

// ---- independent metric oracles (no shared code with src/eval.cpp) ----

double oracle_prc_auc(const std::vector<std::vector<double>>& scores,
                      const std::vector<std::vector<int>>& truths) {
  struct Cell {
    double score;
    int mol, atom;
    bool truth, taken = false;
  };
  std::vector<Cell> cells;
  int total_truth = 0;
  for (size_t m = 0; m < scores.size(); ++m) {
    double lo = scores[m][0], hi = scores[m][0];
    for (double s : scores[m]) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    for (size_t a = 0; a < scores[m].size(); ++a) {
      const bool truth = std::find(truths[m].begin(), truths[m].end(), static_cast<int>(a)) !=
                         truths[m].end();
      cells.push_back(
          Cell{hi > lo ? (scores[m][a] - lo) / (hi - lo) : 0.5, static_cast<int>(m),
               static_cast<int>(a), truth});
    }
    total_truth += static_cast<int>(truths[m].size());
  }
  double auc = 0.0, prev_recall = 0.0;
  int hits = 0;
  for (size_t k = 0; k < cells.size(); ++k) {
    size_t best = cells.size();
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].taken) continue;
      if (best == cells.size()) {
        best = i;
        continue;
      }
      const Cell& b = cells[best];
      const Cell& c = cells[i];
      if (c.score > b.score ||
          (c.score == b.score && (c.mol < b.mol || (c.mol == b.mol && c.atom < b.atom))))
        best = i;
    }
    cells[best].taken = true;
    if (cells[best].truth) ++hits;
    const double recall = static_cast<double>(hits) / total_truth;
    auc += (recall - prev_recall) * (static_cast<double>(hits) / static_cast<double>(k + 1));
    prev_recall = recall;
  }
  return auc;
}

double oracle_roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  int64_t pairs = 0;
  for (size_t i = 0; i < scores.size(); ++i)
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[i] != 1 || labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  return wins / static_cast<double>(pairs);
}

// f(phi) = sum_i w . phi_i
class LinearSurrogate : public Scorer {
public:
  explicit LinearSurrogate(Tensor weight) : weight_(std::move(weight)) {}
  double dropout_rate() const override { return 0.0; }
  Tensor embed(const MolecularGraph& graph) const override {
    Tensor phi(graph.atom_count(), weight_.rows());
    Rng rng(0xfeedULL + static_cast<uint64_t>(graph.atom_count()));
    for (int64_t i = 0; i < phi.size(); ++i) phi.data()[i] = rng.uniform(-1.0, 1.0);
    return phi;
  }
  DropoutMaskSet sample_masks(const MolecularGraph&, Rng&) const override { return {}; }
  DropoutMaskSet identity_masks(const MolecularGraph&) const override { return {}; }
  ValueId build_score(Tape& tape, ValueId phi, const MolecularGraph&,
                      const DropoutMaskSet&) const override {
    return tape.sum_all(tape.matmul(phi, tape.constant(weight_)));
  }

private:
  Tensor weight_;
};

// shared desk-scale dataset (criteria 5 and 6)
struct DeskData {
  std::vector<LabeledMol> train;
  std::vector<LabeledMol> held_out;
  std::vector<EvalMolecule> eval_positives;
  double positive_atom_base_rate = 0.0;
};

DeskData make_desk_data() {
  GeneratorConfig cfg;
  cfg.count = 2400;
  cfg.min_atoms = 14;
  cfg.max_atoms = 26;
  cfg.positive_rate = 0.3;
  cfg.decoy_ring_rate = 0.10;
  cfg.seed = 20240601;
  auto all = generate_motif_dataset(cfg);

  const MolecularGraph pyridine = parse_smiles("c1ccncc1");
  DeskData data;
  data.train.assign(all.begin(), all.begin() + 2000);
  data.held_out.assign(all.begin() + 2000, all.end());

  int truth_atoms = 0, total_atoms = 0;
  for (const LabeledMol& m : data.held_out) {
    std::vector<int> truth = truth_union(m.graph, pyridine);
    if (truth.empty()) continue;
    truth_atoms += static_cast<int>(truth.size());
    total_atoms += m.graph.atom_count();
    data.eval_positives.push_back(EvalMolecule{m.graph, std::move(truth), ""});
  }
  data.positive_atom_base_rate = static_cast<double>(truth_atoms) / total_atoms;
  return data;
}

using CriterionFn = std::function<bool(std::string& detail)>;

// ------------------------------------------------------------------ 1
bool criterion_gradients(std::string& detail) {
  const double start = now_seconds();
  GeneratorConfig cfg;
  cfg.count = 100;
  cfg.min_atoms = 4;
  cfg.max_atoms = 15;
  cfg.positive_rate = 0.5;
  cfg.seed = 71;
  const auto mols = generate_motif_dataset(cfg);
  std::vector<MolecularGraph> graphs;
  for (const auto& m : mols) graphs.push_back(m.graph);
  const AtomVocabulary vocab = AtomVocabulary::build(graphs);

  double worst = 0.0;
  Rng mask_seed(7100);
  for (ModelKind kind : {ModelKind::nfp, ModelKind::ggnn}) {
    Model model(init_params(kind, Task::binary, vocab, 8, 2, 0.25, 7));
    for (size_t i = 0; i < graphs.size(); ++i) {
      const MolecularGraph& g = graphs[i];
      Rng stream = mask_seed.fork(i * 2 + (kind == ModelKind::ggnn ? 1 : 0));
      const DropoutMaskSet frozen = model.sample_masks(g, stream);
      ScalarFn f = [&](Tape& tape, ValueId phi) { return model.build_score(tape, phi, g, frozen); };
      worst = std::max(worst, grad_check(f, model.embed(g), 1e-5));
    }
  }
  const double elapsed = now_seconds() - start;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max relative error %.3g (tolerance 1e-5), %.1fs (budget 120s)", worst,
                elapsed);
  detail = buf;
  return worst < 1e-5 && elapsed < 120.0;
}

// ------------------------------------------------------------------ 2
bool criterion_reduction_chain(std::string& detail) {
  GeneratorConfig cfg;
  cfg.count = 50;
  cfg.min_atoms = 6;
  cfg.max_atoms = 14;
  cfg.seed = 72;
  const auto mols = generate_motif_dataset(cfg);
  std::vector<MolecularGraph> graphs;
  for (const auto& m : mols) graphs.push_back(m.graph);
  const AtomVocabulary vocab = AtomVocabulary::build(graphs);

  Model plain(init_params(ModelKind::ggnn, Task::binary, vocab, 8, 2, 0.0, 5));
  Model dropped(init_params(ModelKind::ggnn, Task::binary, vocab, 8, 2, 0.25, 5));

  int exact = 0;
  for (const MolecularGraph& g : graphs) {
    const SaliencyResult vanilla = vanilla_grad(plain, g, Norm::l2);
    const bool chain_holds =
        bayes_smooth_grad(plain, g, SmoothSpec{0.0, 20}, 20, Norm::l2, 3).scores ==
            vanilla.scores &&
        bayes_grad(plain, g, 20, Norm::l2, 3).scores == vanilla.scores &&
        smooth_grad(plain, g, SmoothSpec{0.0, 20}, Norm::l2, 3).scores == vanilla.scores &&
        bayes_smooth_grad(dropped, g, SmoothSpec{0.0, 9}, 9, Norm::l2, 3).scores ==
            bayes_grad(dropped, g, 9, Norm::l2, 3).scores &&
        bayes_smooth_grad(plain, g, SmoothSpec{0.2, 9}, 9, Norm::l2, 3).scores ==
            smooth_grad(plain, g, SmoothSpec{0.2, 9}, Norm::l2, 3).scores;
    if (chain_holds) ++exact;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d of 50 molecules bitwise exact across the chain", exact);
  detail = buf;
  return exact == 50;
}

// ------------------------------------------------------------------ 3
bool criterion_mc_convergence(std::string& detail) {
  GeneratorConfig cfg;
  cfg.count = 200;
  cfg.min_atoms = 8;
  cfg.max_atoms = 14;
  cfg.positive_rate = 0.5;
  cfg.seed = 73;
  const auto data = generate_motif_dataset(cfg);
  TrainConfig tc;
  tc.kind = ModelKind::ggnn;
  tc.epochs = 3;
  tc.hidden_dim = 16;
  tc.layers = 2;
  tc.dropout_rate = 0.25;
  tc.seed = 31;
  Model model(train_model(data, tc).params);

  const MolecularGraph mol = parse_smiles("CCc1ccncc1O");
  const int repeats = 50;
  std::vector<double> log_m, log_v;
  for (int m_samples : {10, 40, 160, 640}) {
    std::vector<std::vector<double>> means;
    for (int r = 0; r < repeats; ++r)
      means.push_back(
          bayes_grad(model, mol, m_samples, Norm::l2, 90000 + 1000ULL * m_samples + r).scores);
    const size_t atoms = means[0].size();
    double mean_var = 0.0;
    for (size_t a = 0; a < atoms; ++a) {
      double mu = 0.0;
      for (const auto& v : means) mu += v[a];
      mu /= repeats;
      double var = 0.0;
      for (const auto& v : means) var += (v[a] - mu) * (v[a] - mu);
      mean_var += var / (repeats - 1);
    }
    mean_var /= static_cast<double>(atoms);
    log_m.push_back(std::log(static_cast<double>(m_samples)));
    log_v.push_back(std::log(mean_var));
  }

  double mx = 0, my = 0;
  for (size_t i = 0; i < log_m.size(); ++i) {
    mx += log_m[i];
    my += log_v[i];
  }
  mx /= log_m.size();
  my /= log_v.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < log_m.size(); ++i) {
    num += (log_m[i] - mx) * (log_v[i] - my);
    den += (log_m[i] - mx) * (log_m[i] - mx);
  }
  const double slope = num / den;
  char buf[120];
  std::snprintf(buf, sizeof buf, "log-variance vs log-M slope %.3f (want -1 +- 0.3)", slope);
  detail = buf;
  return slope > -1.3 && slope < -0.7;
}

// ------------------------------------------------------------------ 4
bool criterion_metric_oracles(std::string& detail) {
  Rng rng(74);
  int cases = 0;
  double worst = 0.0;

  // pooled PR over random small configurations
  for (int trial = 0; trial < 1500; ++trial) {
    Rng t = rng.fork(trial);
    const int mols = 1 + static_cast<int>(t.uniform_int(3));
    std::vector<std::vector<double>> scores(mols);
    std::vector<std::vector<int>> truths(mols);
    for (int m = 0; m < mols; ++m) {
      const int atoms = 1 + static_cast<int>(t.uniform_int(8));
      for (int a = 0; a < atoms; ++a) {
        scores[m].push_back(t.uniform_int(5) * 0.25);
        if (t.uniform() < 0.4) truths[m].push_back(a);
      }
      if (truths[m].empty()) truths[m].push_back(static_cast<int>(t.uniform_int(atoms)));
    }
    worst = std::max(worst, std::fabs(prc_auc(saliency_pr_curve(scores, truths)) -
                                      oracle_prc_auc(scores, truths)));
    ++cases;
  }

  // ROC over every label pattern of size <= 8, two tie-rich score draws each
  Rng score_rng(740);
  for (int draw = 0; draw < 2; ++draw)
    for (int n = 2; n <= 8; ++n)
      for (int pattern = 1; pattern < (1 << n) - 1; ++pattern) {
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) labels[i] = (pattern >> i) & 1;
        std::vector<double> scores(n);
        for (int i = 0; i < n; ++i) scores[i] = score_rng.uniform_int(4) * (1.0 / 3.0);
        worst =
            std::max(worst, std::fabs(roc_auc(scores, labels) - oracle_roc_auc(scores, labels)));
        ++cases;
      }

  char buf[120];
  std::snprintf(buf, sizeof buf, "%d cases, max |implementation - oracle| = %.3g", cases,
                worst);
  detail = buf;
  return worst < 1e-12 && cases > 2000;
}

// ------------------------------------------------------------------ 5
bool criterion_desk_scale(std::string& detail) {
  const double start = now_seconds();
  const ExecPolicy serial = ExecPolicy::serial();
  DeskData data = make_desk_data();

  TrainConfig tc;
  tc.kind = ModelKind::ggnn;
  tc.epochs = 50;
  tc.hidden_dim = 32;
  tc.layers = 3;
  tc.dropout_rate = 0.25;
  tc.learning_rate = 1e-3;
  tc.batch_size = 32;
  tc.seed = 42;
  Model model(train_model(data.train, tc).params);

  std::vector<double> scores;
  std::vector<int> labels;
  for (const LabeledMol& m : data.held_out) {
    scores.push_back(model.score_deterministic(m.graph));
    labels.push_back(m.label == 1.0 ? 1 : 0);
  }
  const double held_out_auc = roc_auc(scores, labels);

  std::vector<std::vector<int>> truths;
  for (const EvalMolecule& m : data.eval_positives) truths.push_back(m.truth_atoms);

  const double floor = 2.0 * data.positive_atom_base_rate;
  std::vector<std::pair<std::string, MethodSpec>> methods;
  methods.emplace_back("VanillaGrad", MethodSpec{SaliencyMethod::vanilla, SmoothSpec{}, 1, Norm::l2});
  methods.emplace_back("SmoothGrad",
                       MethodSpec{SaliencyMethod::smooth, SmoothSpec{0.15, 100}, 1, Norm::l2});
  methods.emplace_back("BayesGrad",
                       MethodSpec{SaliencyMethod::bayes, SmoothSpec{}, 100, Norm::l2});
  methods.emplace_back("BayesSmoothGrad",
                       MethodSpec{SaliencyMethod::bayes_smooth, SmoothSpec{0.15, 10}, 10, Norm::l2});

  bool all_pass = held_out_auc >= 0.95;
  std::string lines;
  char buf[200];
  std::snprintf(buf, sizeof buf, "held-out ROC-AUC %.4f (need >= 0.95); PRC-AUC floor %.3f:",
                held_out_auc, floor);
  lines = buf;
  std::vector<std::vector<double>> bayes_scores;
  for (const auto& [name, spec] : methods) {
    const auto method_scores =
        saliency_scores_for(model, data.eval_positives, spec, 4242, serial);
    const double auc = prc_auc(saliency_pr_curve(method_scores, truths));
    std::snprintf(buf, sizeof buf, " %s %.4f", name.c_str(), auc);
    lines += buf;
    all_pass = all_pass && auc >= floor;
    if (name == "BayesGrad") bayes_scores = method_scores;
  }

  // per-molecule highlight check: most motif atoms outrank the median atom
  int highlighted = 0;
  for (size_t m = 0; m < bayes_scores.size(); ++m) {
    std::vector<double> sorted = bayes_scores[m];
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    int above = 0;
    for (int a : truths[m]) above += bayes_scores[m][a] > median;
    if (above * 2 > static_cast<int>(truths[m].size())) ++highlighted;
  }
  const double highlight_fraction =
      static_cast<double>(highlighted) / static_cast<double>(bayes_scores.size());
  all_pass = all_pass && highlight_fraction >= 0.8;

  const double elapsed = now_seconds() - start;
  std::snprintf(buf, sizeof buf,
                "; bayes highlights motif above median in %.2f (need >= 0.8); %d eval "
                "positives, %.0fs (budget 900s)",
                highlight_fraction, static_cast<int>(data.eval_positives.size()), elapsed);
  lines += buf;
  detail = lines;
  return all_pass && elapsed < 900.0;
}

// ------------------------------------------------------------------ 6
bool criterion_benchmark_shape(std::string& detail) {
  DeskData data = make_desk_data();

  BenchmarkConfig cfg;
  cfg.subset_size = 300;
  cfg.repeats = 10;
  cfg.seed = 606;
  cfg.train.kind = ModelKind::ggnn;
  cfg.train.epochs = 20;
  cfg.train.hidden_dim = 16;
  cfg.train.layers = 2;
  cfg.train.dropout_rate = 0.25;
  cfg.methods = default_benchmark_methods(SmoothSpec{0.15, 25}, 25, Norm::l2);

  // trim the eval set to keep the paired run desk-sized
  std::vector<EvalMolecule> eval_set(data.eval_positives.begin(),
                                     data.eval_positives.begin() +
                                         std::min<size_t>(30, data.eval_positives.size()));

  const BenchmarkReport a = benchmark_run(data.train, eval_set, cfg, ExecPolicy::serial());
  const BenchmarkReport b = benchmark_run(data.train, eval_set, cfg, ExecPolicy::serial());
  const std::string json_a = benchmark_report_json(a);
  const bool reproducible = json_a == benchmark_report_json(b);

  const bool shape_ok = a.rows.size() == 4 && a.repeats == 10 &&
                        a.failed_repeat_indices.empty() &&
                        a.rows[0].per_repeat.size() == 10;

  double vanilla_mean = 0.0, bayes_mean = 0.0;
  std::string summary;
  char buf[120];
  for (const auto& row : a.rows) {
    std::snprintf(buf, sizeof buf, " %s %.3f+-%.3f", row.method.c_str(), row.mean, row.stddev);
    summary += buf;
    if (row.method == "VanillaGrad") vanilla_mean = row.mean;
    if (row.method == "BayesGrad") bayes_mean = row.mean;
  }
  std::snprintf(buf, sizeof buf, "; reproducible=%s; BayesGrad>VanillaGrad=%s (soft, logged only)",
                reproducible ? "yes" : "NO", bayes_mean > vanilla_mean ? "yes" : "no");
  detail = summary.substr(1) + buf;
  return reproducible && shape_ok;
}

// ------------------------------------------------------------------ 7
bool criterion_signed_exactness(std::string& detail) {
  GeneratorConfig cfg;
  cfg.count = 50;
  cfg.min_atoms = 4;
  cfg.max_atoms = 16;
  cfg.seed = 77;
  const auto mols = generate_motif_dataset(cfg);

  Rng rng(770);
  double worst_residual = 0.0;
  bool zeros_exact = true;
  for (const auto& [graph, label] : mols) {
    Tensor w(5, 1);
    for (int64_t i = 0; i < w.size(); ++i) w.data()[i] = rng.uniform(-2.0, 2.0);
    LinearSurrogate model(w);

    const Tensor phi = model.embed(graph);
    const Tensor zero(phi.rows(), phi.cols());
    const SaliencyResult sgn = signed_scores(model, graph, zero, SaliencyMethod::vanilla);
    double total = 0.0;
    for (double s : sgn.scores) total += s;

    Tape tape;
    const double f_phi = tape.value(model.build_score(tape, tape.leaf(phi), graph, {})).at(0, 0);
    Tape tape2;
    const double f_zero =
        tape2.value(model.build_score(tape2, tape2.leaf(zero), graph, {})).at(0, 0);
    worst_residual = std::max(worst_residual, std::fabs(total - (f_phi - f_zero)));

    for (double s : signed_scores(model, graph, phi, SaliencyMethod::vanilla).scores)
      zeros_exact = zeros_exact && s == 0.0;
  }
  char buf[140];
  std::snprintf(buf, sizeof buf,
                "max |sum(signed) - (f(phi)-f(0))| = %.3g (tol 1e-9); b=phi exact zeros: %s",
                worst_residual, zeros_exact ? "yes" : "NO");
  detail = buf;
  return worst_residual < 1e-9 && zeros_exact;
}

// ------------------------------------------------------------------ 8
bool criterion_parser_conformance(std::string& detail) {
  std::ifstream in(std::string(GRAPHSAL_FIXTURE_DIR) + "/smiles_corpus.json");
  if (!in.good()) {
    detail = "fixture file missing";
    return false;
  }
  nlohmann::json corpus = nlohmann::json::parse(in);
  int checked = 0, failed = 0;

  for (const auto& fixture : corpus.at("valid")) {
    ++checked;
    try {
      MolecularGraph g = parse_smiles(fixture.at("smiles").get<std::string>());
      const auto& atoms = fixture.at("atoms");
      bool ok = g.atom_count() == static_cast<int>(atoms.size());
      for (int a = 0; ok && a < g.atom_count(); ++a)
        ok = g.atom(a).element == atoms[a][0].get<std::string>() &&
             g.atom(a).formal_charge == atoms[a][1].get<int>() &&
             g.atom(a).aromatic == atoms[a][2].get<bool>();
      std::set<std::tuple<int, int, std::string>> expected, actual;
      for (const auto& b : fixture.at("bonds"))
        expected.insert({b[0].get<int>(), b[1].get<int>(), b[2].get<std::string>()});
      for (const Bond& b : g.bonds())
        actual.insert({std::min(b.i, b.j), std::max(b.i, b.j), bond_order_name(b.order)});
      if (!ok || expected != actual) ++failed;
    } catch (const std::exception&) {
      ++failed;
    }
  }
  for (const auto& fixture : corpus.at("malformed")) {
    ++checked;
    try {
      parse_smiles(fixture.at("smiles").get<std::string>());
      ++failed;
    } catch (const ParseError& e) {
      if (e.offset() != fixture.at("offset").get<size_t>()) ++failed;
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d corpus cases, %d mismatches", checked, failed);
  detail = buf;
  return failed == 0 && checked >= 200;
}

// ------------------------------------------------------------------ 9
bool criterion_regression_mode(std::string& detail) {
  SolubilityConfig cfg;
  cfg.count = 700;
  cfg.min_atoms = 6;
  cfg.max_atoms = 16;
  cfg.seed = 79;
  auto all = generate_solubility_dataset(cfg);
  std::vector<LabeledMol> train(all.begin(), all.begin() + 600);
  std::vector<LabeledMol> held(all.begin() + 600, all.end());

  TrainConfig tc;
  tc.task = Task::regression;
  tc.kind = ModelKind::nfp;
  tc.epochs = 30;
  tc.hidden_dim = 32;
  tc.layers = 3;
  tc.dropout_rate = 0.15;
  tc.seed = 9;
  Model model(train_model(train, tc).params);

  std::vector<double> predictions, targets;
  for (const LabeledMol& m : held) {
    predictions.push_back(model.score_deterministic(m.graph));
    targets.push_back(m.label);
  }
  const double r = pearson_correlation(predictions, targets);

  int positives = 0, sign_correct = 0;
  for (const LabeledMol& m : held) {
    const std::vector<int> group = hydrophilic_atoms(m.graph);
    if (group.empty()) continue;
    ++positives;
    Tensor zero(m.graph.atom_count(), 32);
    const SaliencyResult sgn =
        signed_scores(model, m.graph, zero, SaliencyMethod::bayes, SmoothSpec{}, 50,
                      9000 + positives);
    bool all_positive = true;
    for (int a : group) all_positive = all_positive && sgn.scores[a] > 0.0;
    if (all_positive) ++sign_correct;
  }
  const double fraction = static_cast<double>(sign_correct) / positives;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "held-out pearson %.4f (need >= 0.8); hydrophilic group positive in "
                "%d/%d = %.2f (need >= 0.8)",
                r, sign_correct, positives, fraction);
  detail = buf;
  return r >= 0.8 && fraction >= 0.8;
}

struct Criterion {
  int id;
  const char* title;
  CriterionFn run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "gradient correctness vs finite differences", criterion_gradients},
      {2, "estimator reduction chain, bitwise", criterion_reduction_chain},
      {3, "monte-carlo convergence slope", criterion_mc_convergence},
      {4, "prc/roc metric oracles", criterion_metric_oracles},
      {5, "desk-scale planted-motif training and saliency", criterion_desk_scale},
      {6, "benchmark report shape and reproducibility", criterion_benchmark_shape},
      {7, "signed-score exactness on a linear surrogate", criterion_signed_exactness},
      {8, "parser conformance corpus", criterion_parser_conformance},
      {9, "regression mode with signed hydrophilic maps", criterion_regression_mode},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    std::string detail;
    bool ok = false;
    const double start = now_seconds();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s [%.1fs] -- %s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                now_seconds() - start, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

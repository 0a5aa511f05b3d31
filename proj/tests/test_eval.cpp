#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphsal/benchmark.hpp"
#include "graphsal/eval.hpp"
#include "graphsal/generator.hpp"
#include "graphsal/motif.hpp"
#include "graphsal/rng.hpp"

using namespace graphsal;

namespace {

// Independent PRC-AUC oracle: normalize per molecule, then repeatedly
// select the best remaining atom by (score, molecule, atom) and
// accumulate rectangle areas. No shared code with the implementation.
double oracle_prc_auc(std::vector<std::vector<double>> scores,
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
      const double norm = hi > lo ? (scores[m][a] - lo) / (hi - lo) : 0.5;
      const bool truth = std::find(truths[m].begin(), truths[m].end(), static_cast<int>(a)) !=
                         truths[m].end();
      cells.push_back(Cell{norm, static_cast<int>(m), static_cast<int>(a), truth});
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
    const double precision = static_cast<double>(hits) / static_cast<double>(k + 1);
    auc += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return auc;
}

// Exhaustive pair-counting ROC oracle; ties count 1/2.
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

} // namespace

TEST_CASE("three-atom example from first principles") {
  const std::vector<std::vector<double>> scores = {{0.9, 0.8, 0.1}};
  const std::vector<std::vector<int>> truths = {{0, 2}};
  PRCurve curve = saliency_pr_curve(scores, truths);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].recall == 0.5);
  CHECK(curve.points[0].precision == 1.0);
  CHECK(curve.points[1].recall == 0.5);
  CHECK(curve.points[1].precision == 0.5);
  CHECK(curve.points[2].recall == 1.0);
  CHECK(curve.points[2].precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const double auc = prc_auc(curve);
  CHECK(auc == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(auc == doctest::Approx(oracle_prc_auc(scores, truths)).epsilon(1e-15));
}

TEST_CASE("perfect ranking gives a flat curve with area one") {
  PRCurve curve = saliency_pr_curve({{0.9, 0.8, 0.1, 0.05}}, {{0, 1}});
  for (size_t k = 0; k < 2; ++k) CHECK(curve.points[k].precision == 1.0);
  CHECK(prc_auc(curve) == 1.0);
}

TEST_CASE("degenerate single-point curve has area equal to its precision") {
  PRCurve single;
  single.points.push_back(PRPoint{1.0, 0.25, 0.5});
  CHECK(prc_auc(single) == 0.25);
  CHECK_THROWS_AS(prc_auc(PRCurve{}), std::invalid_argument);
}

TEST_CASE("empty truth sets are the caller's bug") {
  CHECK_THROWS_AS(saliency_pr_curve({{0.5, 0.2}}, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(saliency_pr_curve({{0.5}}, {{0}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(saliency_pr_curve({{0.5}}, {{3}}), std::invalid_argument);
}

TEST_CASE("prc property suite: oracle equality and recall monotonicity") {
  Rng rng(404);
  for (int trial = 0; trial < 400; ++trial) {
    Rng t = rng.fork(trial);
    const int mols = 1 + static_cast<int>(t.uniform_int(3));
    std::vector<std::vector<double>> scores(mols);
    std::vector<std::vector<int>> truths(mols);
    for (int m = 0; m < mols; ++m) {
      const int atoms = 1 + static_cast<int>(t.uniform_int(8));
      for (int a = 0; a < atoms; ++a) {
        // coarse grid forces plenty of ties
        scores[m].push_back(t.uniform_int(5) * 0.25);
        if (t.uniform() < 0.4) truths[m].push_back(a);
      }
      if (truths[m].empty()) truths[m].push_back(static_cast<int>(t.uniform_int(atoms)));
    }
    PRCurve curve = saliency_pr_curve(scores, truths);
    double prev = 0.0;
    for (const PRPoint& p : curve.points) {
      CHECK(p.recall >= prev);
      CHECK(p.recall >= 0.0);
      CHECK(p.recall <= 1.0);
      CHECK(p.precision >= 0.0);
      CHECK(p.precision <= 1.0);
      prev = p.recall;
    }
    CHECK(prc_auc(curve) == doctest::Approx(oracle_prc_auc(scores, truths)).epsilon(1e-12));
  }
}

TEST_CASE("random scores on a large pool approach the base rate") {
  Rng rng(13);
  std::vector<std::vector<double>> scores(60);
  std::vector<std::vector<int>> truths(60);
  int truth_atoms = 0, total_atoms = 0;
  for (int m = 0; m < 60; ++m) {
    for (int a = 0; a < 40; ++a) {
      scores[m].push_back(rng.uniform());
      if (rng.uniform() < 0.3) truths[m].push_back(a);
    }
    if (truths[m].empty()) truths[m].push_back(0);
    truth_atoms += static_cast<int>(truths[m].size());
    total_atoms += 40;
  }
  const double base_rate = static_cast<double>(truth_atoms) / total_atoms;
  CHECK(prc_auc(saliency_pr_curve(scores, truths)) ==
        doctest::Approx(base_rate).epsilon(0.2));
}

TEST_CASE("per-molecule average mode") {
  // molecule 1 ranks perfectly, molecule 2 is exactly wrong
  const std::vector<std::vector<double>> scores = {{0.9, 0.1}, {0.1, 0.9}};
  const std::vector<std::vector<int>> truths = {{0}, {0}};
  const double averaged = per_molecule_average_prc_auc(scores, truths);
  CHECK(averaged == doctest::Approx((1.0 + 0.5) / 2.0).epsilon(1e-12));
}

TEST_CASE("roc_auc closed forms and oracle equality") {
  CHECK(roc_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == 1.0);
  CHECK(roc_auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}) == 0.5);
  CHECK_THROWS_AS(roc_auc({0.5, 0.6}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(roc_auc({0.5, 0.6}, {0, 2}), std::invalid_argument);

  const std::vector<double> six = {0.1, 0.4, 0.35, 0.8, 0.35, 0.9};
  const std::vector<int> labels = {0, 0, 1, 1, 0, 1};
  CHECK(roc_auc(six, labels) == doctest::Approx(oracle_roc_auc(six, labels)).epsilon(1e-15));

  Rng rng(55);
  for (int trial = 0; trial < 600; ++trial) {
    Rng t = rng.fork(trial);
    const int n = 2 + static_cast<int>(t.uniform_int(7));
    std::vector<double> scores;
    std::vector<int> labels2;
    int pos = 0;
    for (int i = 0; i < n; ++i) {
      scores.push_back(t.uniform_int(4) * (1.0 / 3.0));
      labels2.push_back(t.uniform() < 0.5 ? 1 : 0);
      pos += labels2.back();
    }
    if (pos == 0) labels2[0] = 1;
    if (pos == n) labels2[0] = 0;
    CHECK(roc_auc(scores, labels2) ==
          doctest::Approx(oracle_roc_auc(scores, labels2)).epsilon(1e-12));
  }
}

TEST_CASE("mae and pearson") {
  CHECK(mean_abs_error({1.0, 2.0}, {2.0, 0.0}) == 1.5);
  CHECK(pearson_correlation({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
  CHECK(pearson_correlation({1, 2, 3, 4}, {8, 6, 4, 2}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_correlation({1, 1}, {2, 3}), std::invalid_argument);
}

TEST_CASE("benchmark_run: paired design, reproducibility, order invariance") {
  GeneratorConfig gen;
  gen.count = 160;
  gen.min_atoms = 7;
  gen.max_atoms = 12;
  gen.positive_rate = 0.45;
  gen.seed = 3;
  auto pool = generate_motif_dataset(gen);

  const MolecularGraph pyridine = parse_smiles("c1ccncc1");
  GeneratorConfig egen = gen;
  egen.count = 60;
  egen.seed = 4;
  std::vector<EvalMolecule> eval_set;
  for (auto& m : generate_motif_dataset(egen)) {
    auto matches = match_motif(m.graph, pyridine);
    if (matches.empty()) continue;
    std::vector<int> truth;
    for (const auto& embedding : matches)
      for (int a : embedding)
        if (std::find(truth.begin(), truth.end(), a) == truth.end()) truth.push_back(a);
    std::sort(truth.begin(), truth.end());
    eval_set.push_back(EvalMolecule{std::move(m.graph), std::move(truth), ""});
  }
  REQUIRE(eval_set.size() >= 5);

  BenchmarkConfig cfg;
  cfg.subset_size = 40;
  cfg.repeats = 3;
  cfg.seed = 17;
  cfg.train.epochs = 2;
  cfg.train.hidden_dim = 8;
  cfg.train.layers = 2;
  cfg.methods = default_benchmark_methods(SmoothSpec{0.15, 4}, 4, Norm::l2);

  BenchmarkReport a = benchmark_run(pool, eval_set, cfg);
  BenchmarkReport b = benchmark_run(pool, eval_set, cfg);
  REQUIRE(a.rows.size() == 4);
  for (size_t m = 0; m < a.rows.size(); ++m) {
    CHECK(a.rows[m].per_repeat == b.rows[m].per_repeat);
    CHECK(a.rows[m].stddev >= 0.0);
    REQUIRE(a.rows[m].per_repeat.size() == 3);
  }

  // reversing the method list does not change any per-method value
  BenchmarkConfig reversed = cfg;
  std::reverse(reversed.methods.begin(), reversed.methods.end());
  BenchmarkReport c = benchmark_run(pool, eval_set, reversed);
  for (const auto& row : a.rows) {
    bool found = false;
    for (const auto& other : c.rows)
      if (other.method == row.method) {
        CHECK(other.per_repeat == row.per_repeat);
        found = true;
      }
    CHECK(found);
  }

  // when every repeat produces the same PRC-AUC the reported std is 0;
  // truth = all atoms forces AUC 1.0 for any scores, in every repeat
  std::vector<EvalMolecule> saturated;
  for (int i = 0; i < 4; ++i) {
    std::vector<int> all_atoms(eval_set[i].graph.atom_count());
    for (size_t a = 0; a < all_atoms.size(); ++a) all_atoms[a] = static_cast<int>(a);
    saturated.push_back(EvalMolecule{eval_set[i].graph, std::move(all_atoms), ""});
  }
  BenchmarkReport flat = benchmark_run(pool, saturated, cfg);
  for (const auto& row : flat.rows) {
    CHECK(row.mean == 1.0);
    CHECK(row.stddev == 0.0);
  }

  // csv matrix shape: one row per method, one column per repeat
  const std::string csv = benchmark_report_csv(a);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const std::string table = benchmark_report_table(a);
  CHECK(table.find("VanillaGrad") != std::string::npos);
  CHECK(table.find("BayesSmoothGrad") != std::string::npos);

  CHECK_THROWS_AS(benchmark_run(pool, eval_set, [&] {
    BenchmarkConfig bad = cfg;
    bad.subset_size = 200;
    return bad;
  }()), std::invalid_argument);
  CHECK_THROWS_AS(benchmark_run(pool, eval_set, [&] {
    BenchmarkConfig bad = cfg;
    bad.repeats = 1;
    return bad;
  }()), std::invalid_argument);
}

TEST_CASE("benchmark_run records diverged repeats and excludes them from aggregates") {
  SolubilityConfig gen;
  gen.count = 60;
  gen.seed = 21;
  auto pool = generate_solubility_dataset(gen);
  for (int i : {5, 17, 40}) pool[i].label = 1e200; // squared loss overflows

  std::vector<EvalMolecule> eval_set;
  for (int i = 0; i < 6; ++i) {
    std::vector<int> all_atoms(pool[i].graph.atom_count());
    for (size_t a = 0; a < all_atoms.size(); ++a) all_atoms[a] = static_cast<int>(a);
    eval_set.push_back(EvalMolecule{pool[i].graph, std::move(all_atoms), ""});
  }

  BenchmarkConfig cfg;
  cfg.subset_size = 20;
  cfg.repeats = 6;
  cfg.seed = 3; // subsets 0,1,4 hit a poisoned row; 2,3,5 do not
  cfg.train.task = Task::regression;
  cfg.train.kind = ModelKind::nfp;
  cfg.train.epochs = 1;
  cfg.train.hidden_dim = 4;
  cfg.train.layers = 1;
  cfg.methods = {MethodSpec{SaliencyMethod::vanilla, SmoothSpec{}, 1, Norm::l2}};

  BenchmarkReport report = benchmark_run(pool, eval_set, cfg);
  CHECK(report.failed_repeat_indices.size() == 3);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].per_repeat.size() == 3); // failures excluded
  CHECK(std::isfinite(report.rows[0].mean));
  CHECK(report.rows[0].stddev >= 0.0);
  const std::string json = benchmark_report_json(report);
  CHECK(json.find("failed_repeat_indices") != std::string::npos);

  // a seed whose every subset hits a poisoned row: loud failure
  cfg.seed = 5;
  CHECK_THROWS_AS(benchmark_run(pool, eval_set, cfg), std::runtime_error);
}

#include "graphsal/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace graphsal {

PRCurve saliency_pr_curve(const std::vector<std::vector<double>>& scores_per_molecule,
                          const std::vector<std::vector<int>>& truth_per_molecule) {
  if (scores_per_molecule.size() != truth_per_molecule.size())
    throw std::invalid_argument("pr curve: scores and truths differ in molecule count");
  if (scores_per_molecule.empty())
    throw std::invalid_argument("pr curve: no molecules");

  struct Entry {
    double score;
    int molecule;
    int atom;
    bool truth;
  };
  std::vector<Entry> pool;
  int truth_total = 0;

  for (size_t m = 0; m < scores_per_molecule.size(); ++m) {
    const std::vector<double>& scores = scores_per_molecule[m];
    const std::vector<int>& truth = truth_per_molecule[m];
    if (truth.empty())
      throw std::invalid_argument("pr curve: molecule " + std::to_string(m) +
                                  " has an empty truth set (filter to positives first)");
    for (int a : truth)
      if (a < 0 || a >= static_cast<int>(scores.size()))
        throw std::invalid_argument("pr curve: truth atom index out of range");

    double lo = scores[0], hi = scores[0];
    for (double s : scores) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    std::vector<bool> is_truth(scores.size(), false);
    for (int a : truth) is_truth[a] = true;
    truth_total += static_cast<int>(truth.size());

    for (size_t a = 0; a < scores.size(); ++a) {
      // constant-score molecules normalize to the midpoint
      const double normalized = hi > lo ? (scores[a] - lo) / (hi - lo) : 0.5;
      pool.push_back(Entry{normalized, static_cast<int>(m), static_cast<int>(a), is_truth[a]});
    }
  }

  std::sort(pool.begin(), pool.end(), [](const Entry& x, const Entry& y) {
    return std::tuple(-x.score, x.molecule, x.atom) < std::tuple(-y.score, y.molecule, y.atom);
  });

  PRCurve curve;
  curve.truth_atoms = truth_total;
  curve.total_atoms = static_cast<int>(pool.size());
  int hits = 0;
  for (size_t k = 0; k < pool.size(); ++k) {
    if (pool[k].truth) ++hits;
    curve.points.push_back(PRPoint{static_cast<double>(hits) / truth_total,
                                   static_cast<double>(hits) / static_cast<double>(k + 1),
                                   pool[k].score});
  }
  return curve;
}

double prc_auc(const PRCurve& curve) {
  if (curve.points.empty()) throw std::invalid_argument("prc_auc: empty curve");
  double area = 0.0;
  double prev_recall = 0.0;
  for (const PRPoint& p : curve.points) {
    if (p.recall < prev_recall - 1e-15)
      throw std::invalid_argument("prc_auc: recall must be non-decreasing");
    area += (p.recall - prev_recall) * p.precision;
    prev_recall = p.recall;
  }
  return area;
}

double per_molecule_average_prc_auc(
    const std::vector<std::vector<double>>& scores_per_molecule,
    const std::vector<std::vector<int>>& truth_per_molecule) {
  if (scores_per_molecule.size() != truth_per_molecule.size() || scores_per_molecule.empty())
    throw std::invalid_argument("pr curve: bad molecule lists");
  double sum = 0.0;
  for (size_t m = 0; m < scores_per_molecule.size(); ++m)
    sum += prc_auc(saliency_pr_curve({scores_per_molecule[m]}, {truth_per_molecule[m]}));
  return sum / static_cast<double>(scores_per_molecule.size());
}

double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty())
    throw std::invalid_argument("roc_auc: bad input sizes");
  int64_t positives = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("roc_auc: labels must be 0/1");
    positives += y;
  }
  const int64_t negatives = static_cast<int64_t>(labels.size()) - positives;
  if (positives == 0 || negatives == 0)
    throw std::invalid_argument("roc_auc: both classes must be present");

  // rank-sum with average ranks over tie groups
  std::vector<size_t> order(scores.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1) positive_rank_sum += avg_rank;
    i = j;
  }
  const double u = positive_rank_sum - static_cast<double>(positives) *
                                           (static_cast<double>(positives) + 1.0) / 2.0;
  return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

double mean_abs_error(const std::vector<double>& predictions,
                      const std::vector<double>& targets) {
  if (predictions.size() != targets.size() || predictions.empty())
    throw std::invalid_argument("mae: bad input sizes");
  double sum = 0.0;
  for (size_t i = 0; i < predictions.size(); ++i) sum += std::fabs(predictions[i] - targets[i]);
  return sum / static_cast<double>(predictions.size());
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson: need at least two paired values");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) throw std::invalid_argument("pearson: zero variance input");
  return cov / std::sqrt(va * vb);
}

} // namespace graphsal

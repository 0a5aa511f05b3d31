#pragma once

#include <vector>

namespace graphsal {

struct PRPoint {
  double recall = 0.0;
  double precision = 0.0;
  double threshold = 0.0; // normalized score at this rank cut
};

// Precision-recall points at every rank cut, recall non-decreasing.
struct PRCurve {
  std::vector<PRPoint> points;
  int truth_atoms = 0;
  int total_atoms = 0;
};

// Pooled per-atom precision-recall curve of ranked saliency scores
// against ground-truth atom sets.
//
// Scores are min-max normalized per molecule, pooled, and ranked
// descending (ties broken by molecule index then atom index); precision
// and recall are computed at every rank cut. Every molecule must have a
// non-empty truth set; callers filter to positives first.
PRCurve saliency_pr_curve(const std::vector<std::vector<double>>& scores_per_molecule,
                          const std::vector<std::vector<int>>& truth_per_molecule);

// Area under the curve: step-wise integration over recall with
// right-continuous precision.
double prc_auc(const PRCurve& curve);

// Alternate pooling for sensitivity analysis: mean of per-molecule
// PRC-AUC values instead of one pooled ranking.
double per_molecule_average_prc_auc(const std::vector<std::vector<double>>& scores_per_molecule,
                                    const std::vector<std::vector<int>>& truth_per_molecule);

// Mann-Whitney ROC-AUC; ties contribute 1/2. Both classes must be present.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

double mean_abs_error(const std::vector<double>& predictions, const std::vector<double>& targets);
double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

} // namespace graphsal

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphsal/exec.hpp"
#include "graphsal/gnn.hpp"
#include "graphsal/molgraph.hpp"
#include "graphsal/tensor.hpp"

namespace graphsal {

enum class Norm { l1, l2 };
enum class SaliencyMethod { vanilla, smooth, bayes, bayes_smooth };

const char* norm_name(Norm norm);
Norm norm_from_name(const std::string& name);
const char* saliency_method_name(SaliencyMethod method);
SaliencyMethod saliency_method_from_name(const std::string& name);

// Gaussian input-noise settings for the smoothed estimators: sigma is the
// elementwise noise standard deviation in embedding-space units, samples
// the Monte-Carlo draw count.
struct SmoothSpec {
  double sigma = 0.15;
  int samples = 100;
};

// Per-atom importance scores plus the metadata needed to reproduce the
// result bit-for-bit from the same model file.
struct SaliencyResult {
  std::vector<double> scores;
  std::vector<double> stddev; // per-atom sample std; empty when one effective sample
  bool is_signed = false;
  SaliencyMethod method = SaliencyMethod::vanilla;
  int mask_samples = 1;  // effective dropout sample count
  int noise_samples = 1; // effective input-noise sample count
  double sigma = 0.0;
  Norm norm = Norm::l2;
  uint64_t seed = 0;
};

// The four estimators. All gradients are taken at the raw pre-sigmoid
// score with respect to the embedded feature matrix. Degenerate settings
// collapse exactly: sigma=0 and p=0 reduce each estimator to the next
// simpler one, bit-for-bit, because collapsed sample dimensions are not
// drawn at all and surviving sample indices keep the same derived rng
// streams. The execution policy never changes results: samples land in
// indexed slots and are reduced in index order.

// s_i = ||d f / d phi_i|| with dropout disabled.
SaliencyResult vanilla_grad(const Scorer& model, const MolecularGraph& graph,
                            Norm norm = Norm::l2,
                            const ExecPolicy& policy = ExecPolicy::serial());

// Mean gradient norm under Gaussian noise added to phi (fixed sigma).
SaliencyResult smooth_grad(const Scorer& model, const MolecularGraph& graph,
                           const SmoothSpec& spec, Norm norm, uint64_t seed,
                           const ExecPolicy& policy = ExecPolicy::serial());

// Mean gradient norm over `samples` posterior weight draws, each realized
// by freshly sampled dropout masks.
SaliencyResult bayes_grad(const Scorer& model, const MolecularGraph& graph, int samples,
                          Norm norm, uint64_t seed,
                          const ExecPolicy& policy = ExecPolicy::serial());

// Average over mask_samples dropout draws x spec.samples noise draws.
SaliencyResult bayes_smooth_grad(const Scorer& model, const MolecularGraph& graph,
                                 const SmoothSpec& spec, int mask_samples, Norm norm,
                                 uint64_t seed,
                                 const ExecPolicy& policy = ExecPolicy::serial());

// Signed first-order attribution (phi_i - b_i) . g_i relative to the
// baseline. For sampled estimators the gradient is averaged first and the
// inner product taken once; per-sample inner products feed the std.
SaliencyResult signed_scores(const Scorer& model, const MolecularGraph& graph,
                             const Tensor& baseline, SaliencyMethod method,
                             const SmoothSpec& spec = SmoothSpec{}, int mask_samples = 100,
                             uint64_t seed = 0,
                             const ExecPolicy& policy = ExecPolicy::serial());

// {smiles, method, params{M, sigma, norm, seed}, scores[], std[]?, signed}
std::string saliency_result_to_json(const SaliencyResult& result, const std::string& smiles);

} // namespace graphsal

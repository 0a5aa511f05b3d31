#include "graphsal/saliency.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "graphsal/rng.hpp"
#include "graphsal/tape.hpp"

namespace graphsal {

const char* norm_name(Norm norm) { return norm == Norm::l1 ? "l1" : "l2"; }

Norm norm_from_name(const std::string& name) {
  if (name == "l1" || name == "L1") return Norm::l1;
  if (name == "l2" || name == "L2") return Norm::l2;
  throw std::invalid_argument("unknown norm '" + name + "' (expected l1 or l2)");
}

const char* saliency_method_name(SaliencyMethod method) {
  switch (method) {
    case SaliencyMethod::vanilla: return "vanilla";
    case SaliencyMethod::smooth: return "smooth";
    case SaliencyMethod::bayes: return "bayes";
    case SaliencyMethod::bayes_smooth: return "bayes-smooth";
  }
  return "vanilla";
}

SaliencyMethod saliency_method_from_name(const std::string& name) {
  if (name == "vanilla") return SaliencyMethod::vanilla;
  if (name == "smooth") return SaliencyMethod::smooth;
  if (name == "bayes") return SaliencyMethod::bayes;
  if (name == "bayes-smooth" || name == "bayes_smooth") return SaliencyMethod::bayes_smooth;
  throw std::invalid_argument("unknown saliency method '" + name + "'");
}

namespace {

// Effective sampling grid after degenerate dimensions collapse. Collapsed
// dimensions draw nothing from the rng, which is what makes the
// estimator reduction chain exact.
struct SampleGrid {
  int mask_samples = 1;
  int noise_samples = 1;
  double sigma = 0.0;
  bool use_dropout = false;
};

SampleGrid make_grid(const Scorer& model, SaliencyMethod method, const SmoothSpec& spec,
                     int mask_samples) {
  if (spec.samples < 1) throw std::invalid_argument("saliency: sample count must be >= 1");
  if (spec.sigma < 0.0) throw std::invalid_argument("saliency: sigma must be >= 0");
  if (mask_samples < 1) throw std::invalid_argument("saliency: mask sample count must be >= 1");

  const bool wants_noise =
      method == SaliencyMethod::smooth || method == SaliencyMethod::bayes_smooth;
  const bool wants_dropout =
      method == SaliencyMethod::bayes || method == SaliencyMethod::bayes_smooth;

  SampleGrid grid;
  grid.use_dropout = wants_dropout && model.dropout_rate() > 0.0;
  grid.mask_samples = grid.use_dropout ? mask_samples : 1;
  if (wants_noise && spec.sigma > 0.0) {
    grid.sigma = spec.sigma;
    grid.noise_samples = spec.samples;
  }
  return grid;
}

Tensor gaussian_noise(int64_t rows, int64_t cols, double sigma, Rng& rng) {
  Tensor noise(rows, cols);
  for (int64_t i = 0; i < noise.size(); ++i) noise.data()[i] = sigma * rng.normal();
  return noise;
}

// One gradient matrix d(score)/d(phi + noise) per grid cell, in indexed
// slots so the reduction below is independent of scheduling.
std::vector<Tensor> sample_gradients(const Scorer& model, const MolecularGraph& graph,
                                     const SampleGrid& grid, uint64_t seed,
                                     const ExecPolicy& policy) {
  const Tensor phi = model.embed(graph);
  Rng base(seed);
  const Rng mask_base = base.fork(1);
  const Rng noise_base = base.fork(2);

  const int total = grid.mask_samples * grid.noise_samples;
  std::vector<Tensor> slots(static_cast<size_t>(total));
  run_indexed(total, policy, [&](int k) {
    const int mask_idx = k / grid.noise_samples;
    const int noise_idx = k;

    DropoutMaskSet masks;
    if (grid.use_dropout) {
      Rng mask_rng = mask_base.fork(static_cast<uint64_t>(mask_idx));
      masks = model.sample_masks(graph, mask_rng);
    } else {
      masks = model.identity_masks(graph);
    }

    Tensor input = phi;
    if (grid.sigma > 0.0) {
      Rng noise_rng = noise_base.fork(static_cast<uint64_t>(noise_idx));
      const Tensor noise = gaussian_noise(phi.rows(), phi.cols(), grid.sigma, noise_rng);
      for (int64_t i = 0; i < input.size(); ++i) input.data()[i] += noise.data()[i];
    }

    Tape tape;
    ValueId leaf = tape.leaf(std::move(input));
    ValueId score = model.build_score(tape, leaf, graph, masks);
    GradientMap grads = tape.backward(score);
    slots[static_cast<size_t>(k)] = grads.at(leaf);
  });
  return slots;
}

double row_norm(const Tensor& g, int64_t row, Norm norm) {
  double acc = 0.0;
  for (int64_t c = 0; c < g.cols(); ++c) {
    const double v = g.at(row, c);
    acc += norm == Norm::l1 ? std::fabs(v) : v * v;
  }
  return norm == Norm::l1 ? acc : std::sqrt(acc);
}

void fill_mean_std(const std::vector<std::vector<double>>& per_sample, SaliencyResult& out) {
  const size_t samples = per_sample.size();
  const size_t atoms = per_sample[0].size();
  out.scores.assign(atoms, 0.0);
  for (const auto& sample : per_sample)
    for (size_t a = 0; a < atoms; ++a) out.scores[a] += sample[a];
  for (size_t a = 0; a < atoms; ++a) out.scores[a] /= static_cast<double>(samples);

  if (samples > 1) {
    out.stddev.assign(atoms, 0.0);
    for (const auto& sample : per_sample)
      for (size_t a = 0; a < atoms; ++a) {
        const double d = sample[a] - out.scores[a];
        out.stddev[a] += d * d;
      }
    for (size_t a = 0; a < atoms; ++a)
      out.stddev[a] = std::sqrt(out.stddev[a] / static_cast<double>(samples - 1));
  }
}

SaliencyResult estimate_unsigned(const Scorer& model, const MolecularGraph& graph,
                                 SaliencyMethod method, const SmoothSpec& spec,
                                 int mask_samples, Norm norm, uint64_t seed,
                                 const ExecPolicy& policy) {
  const SampleGrid grid = make_grid(model, method, spec, mask_samples);
  const std::vector<Tensor> gradients = sample_gradients(model, graph, grid, seed, policy);

  std::vector<std::vector<double>> per_sample(gradients.size());
  for (size_t k = 0; k < gradients.size(); ++k) {
    per_sample[k].resize(static_cast<size_t>(gradients[k].rows()));
    for (int64_t a = 0; a < gradients[k].rows(); ++a)
      per_sample[k][static_cast<size_t>(a)] = row_norm(gradients[k], a, norm);
  }

  SaliencyResult out;
  out.method = method;
  out.mask_samples = grid.mask_samples;
  out.noise_samples = grid.noise_samples;
  out.sigma = grid.sigma;
  out.norm = norm;
  out.seed = seed;
  fill_mean_std(per_sample, out);
  return out;
}

} // namespace

SaliencyResult vanilla_grad(const Scorer& model, const MolecularGraph& graph, Norm norm,
                            const ExecPolicy& policy) {
  return estimate_unsigned(model, graph, SaliencyMethod::vanilla, SmoothSpec{0.0, 1}, 1, norm,
                           0, policy);
}

SaliencyResult smooth_grad(const Scorer& model, const MolecularGraph& graph,
                           const SmoothSpec& spec, Norm norm, uint64_t seed,
                           const ExecPolicy& policy) {
  return estimate_unsigned(model, graph, SaliencyMethod::smooth, spec, 1, norm, seed, policy);
}

SaliencyResult bayes_grad(const Scorer& model, const MolecularGraph& graph, int samples,
                          Norm norm, uint64_t seed, const ExecPolicy& policy) {
  return estimate_unsigned(model, graph, SaliencyMethod::bayes, SmoothSpec{0.0, 1}, samples,
                           norm, seed, policy);
}

SaliencyResult bayes_smooth_grad(const Scorer& model, const MolecularGraph& graph,
                                 const SmoothSpec& spec, int mask_samples, Norm norm,
                                 uint64_t seed, const ExecPolicy& policy) {
  return estimate_unsigned(model, graph, SaliencyMethod::bayes_smooth, spec, mask_samples,
                           norm, seed, policy);
}

SaliencyResult signed_scores(const Scorer& model, const MolecularGraph& graph,
                             const Tensor& baseline, SaliencyMethod method,
                             const SmoothSpec& spec, int mask_samples, uint64_t seed,
                             const ExecPolicy& policy) {
  const Tensor phi = model.embed(graph);
  if (!baseline.same_shape(phi))
    throw std::invalid_argument("signed_scores: baseline shape " + baseline.shape_str() +
                                " does not match phi shape " + phi.shape_str());

  const SampleGrid grid = make_grid(model, method, spec, mask_samples);
  const std::vector<Tensor> gradients = sample_gradients(model, graph, grid, seed, policy);
  const int64_t atoms = phi.rows();

  // mean gradient first (index order), inner product once
  Tensor mean_grad(phi.rows(), phi.cols());
  for (const Tensor& g : gradients)
    for (int64_t i = 0; i < mean_grad.size(); ++i) mean_grad.data()[i] += g.data()[i];
  for (int64_t i = 0; i < mean_grad.size(); ++i)
    mean_grad.data()[i] /= static_cast<double>(gradients.size());

  SaliencyResult out;
  out.is_signed = true;
  out.method = method;
  out.mask_samples = grid.mask_samples;
  out.noise_samples = grid.noise_samples;
  out.sigma = grid.sigma;
  out.seed = seed;
  out.scores.assign(static_cast<size_t>(atoms), 0.0);
  for (int64_t a = 0; a < atoms; ++a) {
    double dot = 0.0;
    for (int64_t c = 0; c < phi.cols(); ++c)
      dot += (phi.at(a, c) - baseline.at(a, c)) * mean_grad.at(a, c);
    out.scores[static_cast<size_t>(a)] = dot;
  }

  if (gradients.size() > 1) {
    // std of the per-sample inner products
    std::vector<std::vector<double>> per_sample(gradients.size());
    for (size_t k = 0; k < gradients.size(); ++k) {
      per_sample[k].resize(static_cast<size_t>(atoms));
      for (int64_t a = 0; a < atoms; ++a) {
        double dot = 0.0;
        for (int64_t c = 0; c < phi.cols(); ++c)
          dot += (phi.at(a, c) - baseline.at(a, c)) * gradients[k].at(a, c);
        per_sample[k][static_cast<size_t>(a)] = dot;
      }
    }
    out.stddev.assign(static_cast<size_t>(atoms), 0.0);
    std::vector<double> mean_dot(static_cast<size_t>(atoms), 0.0);
    for (const auto& sample : per_sample)
      for (int64_t a = 0; a < atoms; ++a) mean_dot[static_cast<size_t>(a)] += sample[a];
    for (int64_t a = 0; a < atoms; ++a)
      mean_dot[static_cast<size_t>(a)] /= static_cast<double>(per_sample.size());
    for (const auto& sample : per_sample)
      for (int64_t a = 0; a < atoms; ++a) {
        const double d = sample[static_cast<size_t>(a)] - mean_dot[static_cast<size_t>(a)];
        out.stddev[static_cast<size_t>(a)] += d * d;
      }
    for (int64_t a = 0; a < atoms; ++a)
      out.stddev[static_cast<size_t>(a)] =
          std::sqrt(out.stddev[static_cast<size_t>(a)] / (per_sample.size() - 1.0));
  }
  return out;
}

std::string saliency_result_to_json(const SaliencyResult& result, const std::string& smiles) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["smiles"] = smiles;
  j["method"] = saliency_method_name(result.method);
  j["params"] = {{"M", result.mask_samples * result.noise_samples},
                 {"mask_samples", result.mask_samples},
                 {"noise_samples", result.noise_samples},
                 {"sigma", result.sigma},
                 {"norm", norm_name(result.norm)},
                 {"seed", result.seed}};
  j["scores"] = result.scores;
  if (!result.stddev.empty()) j["std"] = result.stddev;
  j["signed"] = result.is_signed;
  return j.dump(1);
}

} // namespace graphsal

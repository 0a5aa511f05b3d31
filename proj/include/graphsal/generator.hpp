#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphsal/molgraph.hpp"

namespace graphsal {

struct LabeledMol {
  MolecularGraph graph;
  double label = 0.0;
};

struct GeneratorConfig {
  int count = 100;
  std::string motif_smiles = "c1ccncc1";
  int min_atoms = 10;
  int max_atoms = 18;
  // fraction of molecules that get the motif planted
  double positive_rate = 0.5;
  // probability that a molecule grows a benzene decoy ring
  double decoy_ring_rate = 0.25;
  uint64_t seed = 0;
};

// Random chemically-shaped graphs (trees plus ring decorations over
// C/N/O/S with valence caps). Positives contain at least one planted
// embedding of the motif; labels are recomputed post-hoc with
// match_motif so accidental embeddings in unplanted molecules are
// still labeled 1. Reproducible from the seed.
std::vector<LabeledMol> generate_motif_dataset(const GeneratorConfig& config);

struct SolubilityConfig {
  int count = 100;
  int min_atoms = 6;
  int max_atoms = 16;
  // fraction of molecules that get a hydroxyl-like terminal oxygen
  double hydrophilic_rate = 0.5;
  uint64_t seed = 0;
};

// Regression dataset with an exactly additive per-atom target:
// terminal oxygens contribute strongly positive, carbons mildly
// negative, aromatic carbons more so. The per-atom contributions are
// the planted ground truth for signed saliency checks.
std::vector<LabeledMol> generate_solubility_dataset(const SolubilityConfig& config);

// The additive contribution of one atom in the solubility scheme.
double solubility_atom_contribution(const MolecularGraph& graph, int atom);

// Atoms of the planted hydrophilic group: terminal (degree-1) oxygens.
std::vector<int> hydrophilic_atoms(const MolecularGraph& graph);

} // namespace graphsal

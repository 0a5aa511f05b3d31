#include "graphsal/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphsal/motif.hpp"
#include "graphsal/rng.hpp"

namespace graphsal {

namespace {

double valence_cap(const std::string& element) {
  if (element == "C") return 4.0;
  if (element == "N") return 3.0;
  if (element == "O") return 2.0;
  if (element == "S") return 2.0;
  return 4.0;
}

double bond_valence(BondOrder order) {
  switch (order) {
    case BondOrder::single: return 1.0;
    case BondOrder::double_bond: return 2.0;
    case BondOrder::triple: return 3.0;
    case BondOrder::aromatic: return 1.5;
  }
  return 1.0;
}

double valence_used(const MolecularGraph& g, int atom) {
  double used = 0.0;
  for (const auto& [nb, bond_idx] : g.neighbors(atom))
    used += bond_valence(g.bond(bond_idx).order);
  return used;
}

double spare_valence(const MolecularGraph& g, int atom) {
  return valence_cap(g.atom(atom).element) - valence_used(g, atom);
}

std::vector<int> atoms_with_spare(const MolecularGraph& g, double needed) {
  std::vector<int> out;
  for (int a = 0; a < g.atom_count(); ++a)
    if (spare_valence(g, a) >= needed) out.push_back(a);
  return out;
}

std::string sample_element(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.70) return "C";
  if (u < 0.82) return "N";
  if (u < 0.94) return "O";
  return "S";
}

// attach a benzene ring to a random spare-valence atom (or start from it
// when the graph is empty)
void grow_benzene(MolecularGraph& g, Rng& rng) {
  std::vector<int> anchors = atoms_with_spare(g, 1.0);
  std::vector<int> ring;
  for (int k = 0; k < 6; ++k) ring.push_back(g.add_atom(Atom{"C", 0, true}));
  for (int k = 0; k < 6; ++k) g.add_bond(ring[k], ring[(k + 1) % 6], BondOrder::aromatic);
  if (!anchors.empty()) {
    const int anchor = anchors[rng.uniform_int(static_cast<int64_t>(anchors.size()))];
    g.add_bond(anchor, ring[0], BondOrder::single);
  }
}

void grow_random_atom(MolecularGraph& g, Rng& rng) {
  if (g.atom_count() == 0) {
    g.add_atom(Atom{sample_element(rng), 0, false});
    return;
  }
  std::vector<int> anchors = atoms_with_spare(g, 1.0);
  if (anchors.empty()) return; // saturated; caller stops growing
  const int anchor = anchors[rng.uniform_int(static_cast<int64_t>(anchors.size()))];
  const std::string element = sample_element(rng);
  BondOrder order = BondOrder::single;
  if (valence_cap(element) >= 2.0 && spare_valence(g, anchor) >= 2.0 && rng.uniform() < 0.12)
    order = BondOrder::double_bond;
  const int added = g.add_atom(Atom{element, 0, false});
  g.add_bond(anchor, added, order);
}

// single-bond ring closure between two nearby non-adjacent atoms
void try_close_ring(MolecularGraph& g, Rng& rng) {
  std::vector<int> candidates = atoms_with_spare(g, 1.0);
  if (candidates.size() < 2) return;
  const int a = candidates[rng.uniform_int(static_cast<int64_t>(candidates.size()))];
  // BFS distances from a
  std::vector<int> dist(g.atom_count(), -1);
  std::vector<int> queue{a};
  dist[a] = 0;
  for (size_t head = 0; head < queue.size(); ++head)
    for (const auto& [nb, bond_idx] : g.neighbors(queue[head]))
      if (dist[nb] < 0) {
        dist[nb] = dist[queue[head]] + 1;
        queue.push_back(nb);
      }
  std::vector<int> partners;
  for (int b : candidates)
    if (b != a && dist[b] >= 3 && dist[b] <= 6 && !g.has_bond(a, b) &&
        !g.atom(b).aromatic && !g.atom(a).aromatic)
      partners.push_back(b);
  if (partners.empty()) return;
  const int b = partners[rng.uniform_int(static_cast<int64_t>(partners.size()))];
  g.add_bond(a, b, BondOrder::single);
}

MolecularGraph grow_molecule(Rng& rng, const MolecularGraph* planted, int target_atoms,
                             double decoy_ring_rate) {
  MolecularGraph g;
  if (planted) g = *planted;
  const bool decoy = rng.uniform() < decoy_ring_rate;
  if (decoy && target_atoms - g.atom_count() >= 6) grow_benzene(g, rng);
  while (g.atom_count() < target_atoms) {
    const int before = g.atom_count();
    grow_random_atom(g, rng);
    if (g.atom_count() == before) break; // fully saturated
  }
  if (rng.uniform() < 0.4) try_close_ring(g, rng);
  return g;
}

} // namespace

std::vector<LabeledMol> generate_motif_dataset(const GeneratorConfig& config) {
  if (config.count < 1) throw std::invalid_argument("generator: count must be >= 1");
  if (config.positive_rate < 0.0 || config.positive_rate > 1.0)
    throw std::invalid_argument("generator: positive rate must be in [0,1]");
  const MolecularGraph motif = parse_smiles(config.motif_smiles);
  if (motif.atom_count() > config.max_atoms)
    throw std::invalid_argument("generator: motif has " + std::to_string(motif.atom_count()) +
                                " atoms but max_atoms is " + std::to_string(config.max_atoms));
  if (config.min_atoms < 1 || config.min_atoms > config.max_atoms)
    throw std::invalid_argument("generator: bad atom count range");

  Rng master(config.seed);
  std::vector<LabeledMol> out;
  out.reserve(config.count);
  for (int i = 0; i < config.count; ++i) {
    Rng rng = master.fork(static_cast<uint64_t>(i));
    const bool plant = rng.uniform() < config.positive_rate;
    const int lo = plant ? std::max(config.min_atoms, motif.atom_count()) : config.min_atoms;
    const int target = lo + static_cast<int>(rng.uniform_int(config.max_atoms - lo + 1));
    MolecularGraph g =
        grow_molecule(rng, plant ? &motif : nullptr, target, config.decoy_ring_rate);
    // label recomputed post-hoc so accidental embeddings count
    const double label = match_motif(g, motif).empty() ? 0.0 : 1.0;
    out.push_back(LabeledMol{std::move(g), label});
  }
  return out;
}

double solubility_atom_contribution(const MolecularGraph& graph, int atom) {
  const Atom& a = graph.atom(atom);
  if (a.element == "O") return graph.degree(atom) == 1 ? 1.8 : 0.4;
  if (a.element == "C") return a.aromatic ? -0.5 : -0.25;
  return 0.0;
}

std::vector<int> hydrophilic_atoms(const MolecularGraph& graph) {
  std::vector<int> out;
  for (int a = 0; a < graph.atom_count(); ++a)
    if (graph.atom(a).element == "O" && graph.degree(a) == 1) out.push_back(a);
  return out;
}

std::vector<LabeledMol> generate_solubility_dataset(const SolubilityConfig& config) {
  if (config.count < 1) throw std::invalid_argument("generator: count must be >= 1");
  Rng master(config.seed);
  std::vector<LabeledMol> out;
  out.reserve(config.count);
  for (int i = 0; i < config.count; ++i) {
    Rng rng = master.fork(static_cast<uint64_t>(i));
    const int target =
        config.min_atoms + static_cast<int>(rng.uniform_int(config.max_atoms - config.min_atoms + 1));

    // carbon skeleton, possibly with an aromatic ring
    MolecularGraph g;
    g.add_atom(Atom{"C", 0, false});
    if (rng.uniform() < 0.5 && target >= 8) grow_benzene(g, rng);
    while (g.atom_count() < target - 1) {
      std::vector<int> anchors = atoms_with_spare(g, 1.0);
      if (anchors.empty()) break;
      const int anchor = anchors[rng.uniform_int(static_cast<int64_t>(anchors.size()))];
      const int added = g.add_atom(Atom{"C", 0, false});
      g.add_bond(anchor, added, BondOrder::single);
    }
    if (rng.uniform() < config.hydrophilic_rate) {
      std::vector<int> anchors;
      for (int a : atoms_with_spare(g, 1.0))
        if (g.atom(a).element == "C") anchors.push_back(a);
      if (!anchors.empty()) {
        const int anchor = anchors[rng.uniform_int(static_cast<int64_t>(anchors.size()))];
        const int oxygen = g.add_atom(Atom{"O", 0, false});
        g.add_bond(anchor, oxygen, BondOrder::single);
      }
    }

    double label = 0.0;
    for (int a = 0; a < g.atom_count(); ++a) label += solubility_atom_contribution(g, a);
    out.push_back(LabeledMol{std::move(g), label});
  }
  return out;
}

} // namespace graphsal

#include "graphsal/motif.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace graphsal {

namespace {

bool atoms_compatible(const Atom& motif_atom, const Atom& graph_atom) {
  return motif_atom.element == graph_atom.element &&
         motif_atom.aromatic == graph_atom.aromatic;
}

// Visit order that keeps the partial mapping connected, so each new motif
// atom is constrained by at least one already-mapped neighbor.
std::vector<int> connected_order(const MolecularGraph& motif) {
  const int n = motif.atom_count();
  std::vector<int> order;
  std::vector<bool> placed(n, false);
  order.reserve(n);
  for (int seed = 0; seed < n; ++seed) {
    if (placed[seed]) continue;
    order.push_back(seed);
    placed[seed] = true;
    for (size_t head = order.size() - 1; head < order.size(); ++head)
      for (const auto& [nb, bond] : motif.neighbors(order[head]))
        if (!placed[nb]) {
          placed[nb] = true;
          order.push_back(nb);
        }
  }
  return order;
}

} // namespace

std::vector<std::vector<int>> match_motif(const MolecularGraph& graph,
                                          const MolecularGraph& motif) {
  std::vector<std::vector<int>> result;
  if (motif.atom_count() == 0 || motif.atom_count() > graph.atom_count()) return result;

  const std::vector<int> order = connected_order(motif);
  std::vector<int> mapping(motif.atom_count(), -1);
  std::vector<bool> used(graph.atom_count(), false);
  std::set<std::vector<int>> seen;

  std::function<void(size_t)> extend = [&](size_t depth) {
    if (depth == order.size()) {
      std::vector<int> atoms(mapping.begin(), mapping.end());
      std::sort(atoms.begin(), atoms.end());
      if (seen.insert(atoms).second) result.push_back(std::move(atoms));
      return;
    }
    const int u = order[depth];
    for (int v = 0; v < graph.atom_count(); ++v) {
      if (used[v]) continue;
      if (!atoms_compatible(motif.atom(u), graph.atom(v))) continue;
      if (graph.degree(v) < motif.degree(u)) continue;
      bool ok = true;
      for (const auto& [nb, bond_idx] : motif.neighbors(u)) {
        if (mapping[nb] < 0) continue;
        const Bond* gb = graph.find_bond(v, mapping[nb]);
        if (gb == nullptr || gb->order != motif.bond(bond_idx).order) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      mapping[u] = v;
      used[v] = true;
      extend(depth + 1);
      mapping[u] = -1;
      used[v] = false;
    }
  };
  extend(0);

  std::sort(result.begin(), result.end());
  return result;
}

} // namespace graphsal

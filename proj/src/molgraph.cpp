#include "graphsal/molgraph.hpp"

#include <stdexcept>

namespace graphsal {

int bond_type_index(BondOrder order) {
  switch (order) {
    case BondOrder::single: return 0;
    case BondOrder::double_bond: return 1;
    case BondOrder::triple: return 2;
    case BondOrder::aromatic: return 3;
  }
  return 0;
}

const char* bond_order_name(BondOrder order) {
  switch (order) {
    case BondOrder::single: return "single";
    case BondOrder::double_bond: return "double";
    case BondOrder::triple: return "triple";
    case BondOrder::aromatic: return "aromatic";
  }
  return "single";
}

int MolecularGraph::add_atom(Atom atom) {
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return static_cast<int>(atoms_.size()) - 1;
}

void MolecularGraph::add_bond(int i, int j, BondOrder order) {
  if (i < 0 || j < 0 || i >= atom_count() || j >= atom_count())
    throw std::invalid_argument("bond endpoint out of range");
  if (i == j) throw std::invalid_argument("bond cannot connect an atom to itself");
  if (has_bond(i, j)) throw std::invalid_argument("duplicate bond between atoms " +
                                                  std::to_string(i) + " and " +
                                                  std::to_string(j));
  const int b = static_cast<int>(bonds_.size());
  bonds_.push_back(Bond{i, j, order});
  adjacency_[i].emplace_back(j, b);
  adjacency_[j].emplace_back(i, b);
}

bool MolecularGraph::has_bond(int i, int j) const { return find_bond(i, j) != nullptr; }

const Bond* MolecularGraph::find_bond(int i, int j) const {
  for (const auto& [other, bond_idx] : adjacency_[i])
    if (other == j) return &bonds_[bond_idx];
  return nullptr;
}

AtomVocabulary AtomVocabulary::from_entries(std::vector<std::pair<std::string, bool>> entries) {
  AtomVocabulary v;
  v.entries_ = std::move(entries);
  return v;
}

AtomVocabulary AtomVocabulary::build(const std::vector<MolecularGraph>& molecules) {
  AtomVocabulary v;
  for (const MolecularGraph& mol : molecules)
    for (const Atom& a : mol.atoms()) {
      std::pair<std::string, bool> key{a.element, a.aromatic};
      bool seen = false;
      for (const auto& e : v.entries_)
        if (e == key) {
          seen = true;
          break;
        }
      if (!seen) v.entries_.push_back(std::move(key));
    }
  return v;
}

int AtomVocabulary::index_of(const Atom& atom) const {
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].first == atom.element && entries_[i].second == atom.aromatic)
      return static_cast<int>(i);
  return unknown_index();
}

std::vector<int> featurize(const MolecularGraph& graph, const AtomVocabulary& vocab) {
  std::vector<int> indices;
  indices.reserve(graph.atom_count());
  for (const Atom& a : graph.atoms()) indices.push_back(vocab.index_of(a));
  return indices;
}

} // namespace graphsal

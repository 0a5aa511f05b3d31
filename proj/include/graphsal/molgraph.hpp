#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphsal {

enum class BondOrder { single, double_bond, triple, aromatic };

// 0-based index into the bond-type buckets used by the GGNN message
// matrices and by serialization.
int bond_type_index(BondOrder order);
const char* bond_order_name(BondOrder order);

struct Atom {
  std::string element;
  int formal_charge = 0;
  bool aromatic = false;

  bool operator==(const Atom&) const = default;
};

struct Bond {
  int i = 0;
  int j = 0;
  BondOrder order = BondOrder::single;
};

// Heavy-atom molecular graph. Implicit hydrogens are never materialized.
class MolecularGraph {
public:
  int add_atom(Atom atom);
  // Validates 0 <= i,j < atom_count, i != j, and no duplicate pair.
  void add_bond(int i, int j, BondOrder order);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  const Atom& atom(int i) const { return atoms_[i]; }
  Atom& atom(int i) { return atoms_[i]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Bond& bond(int b) const { return bonds_[b]; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }
  // (neighbor atom, bond index) pairs in insertion order.
  const std::vector<std::pair<int, int>>& neighbors(int i) const { return adjacency_[i]; }

  bool has_bond(int i, int j) const;
  const Bond* find_bond(int i, int j) const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// Parse failure with the byte offset of the offending input position.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, size_t offset)
      : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

private:
  size_t offset_;
};

// SMILES subset: organic-subset atoms B,C,N,O,P,S,F,Cl,Br,I, aromatic
// b,c,n,o,p,s, bracket atoms with optional hydrogen count and charge,
// bonds - = # :, branches, ring closures 1-9 and %nn. Multi-fragment
// input ('.') is rejected.
MolecularGraph parse_smiles(std::string_view text);

// Emit a SMILES string for the subset above. If `emit_order` is given it
// receives the original atom index of each emitted atom, in emission
// order (the order a re-parse will assign).
std::string write_smiles(const MolecularGraph& graph, std::vector<int>* emit_order = nullptr);

// Ordered (element, aromatic) pairs mapped to dense feature indices, with
// a reserved trailing unknown index absorbing unseen pairs.
class AtomVocabulary {
public:
  static AtomVocabulary from_entries(std::vector<std::pair<std::string, bool>> entries);
  static AtomVocabulary build(const std::vector<MolecularGraph>& molecules);

  int index_of(const Atom& atom) const;
  int unknown_index() const { return static_cast<int>(entries_.size()); }
  // Number of distinct feature indices including the unknown bucket.
  int feature_count() const { return static_cast<int>(entries_.size()) + 1; }
  const std::vector<std::pair<std::string, bool>>& entries() const { return entries_; }

  bool operator==(const AtomVocabulary&) const = default;

private:
  std::vector<std::pair<std::string, bool>> entries_;
};

std::vector<int> featurize(const MolecularGraph& graph, const AtomVocabulary& vocab);

} // namespace graphsal

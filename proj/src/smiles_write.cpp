#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "graphsal/molgraph.hpp"

namespace graphsal {

namespace {

BondOrder default_bond(const Atom& a, const Atom& b) {
  return a.aromatic && b.aromatic ? BondOrder::aromatic : BondOrder::single;
}

char bond_symbol(BondOrder order) {
  switch (order) {
    case BondOrder::single: return '-';
    case BondOrder::double_bond: return '=';
    case BondOrder::triple: return '#';
    case BondOrder::aromatic: return ':';
  }
  return '-';
}

bool bare_ok(const Atom& a) {
  if (a.formal_charge != 0) return false;
  static const std::set<std::string> organic_any = {"B", "C", "N", "O", "P", "S"};
  static const std::set<std::string> organic_plain = {"F", "Cl", "Br", "I"};
  if (a.aromatic) return organic_any.count(a.element) != 0;
  return organic_any.count(a.element) != 0 || organic_plain.count(a.element) != 0;
}

std::string atom_token(const Atom& a) {
  std::string symbol = a.element;
  if (a.aromatic) {
    if (symbol.size() != 1)
      throw std::invalid_argument("cannot write aromatic element '" + symbol + "'");
    symbol[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(symbol[0])));
  }
  if (bare_ok(a)) return symbol;
  std::string token = "[" + symbol;
  if (a.formal_charge != 0) {
    token += a.formal_charge > 0 ? '+' : '-';
    const int magnitude = std::abs(a.formal_charge);
    if (magnitude > 1) token += std::to_string(magnitude);
  }
  token += ']';
  return token;
}

} // namespace

std::string write_smiles(const MolecularGraph& graph, std::vector<int>* emit_order) {
  if (graph.atom_count() == 0) throw std::invalid_argument("cannot write empty graph");
  if (emit_order) emit_order->clear();

  const int n = graph.atom_count();
  std::vector<bool> visited(n, false);
  std::vector<bool> tree_bond(graph.bond_count(), false);

  // DFS spanning tree; non-tree bonds become ring closures opened at the
  // endpoint visited first.
  std::vector<int> preorder_rank(n, -1);
  std::vector<std::vector<int>> tree_children(n);
  std::vector<int> back_edges; // bond indices
  {
    int rank = 0;
    std::function<void(int)> dfs = [&](int atom) {
      visited[atom] = true;
      preorder_rank[atom] = rank++;
      for (const auto& [other, bond_idx] : graph.neighbors(atom)) {
        if (!visited[other]) {
          tree_bond[bond_idx] = true;
          tree_children[atom].push_back(other);
          dfs(other);
        }
      }
    };
    dfs(0);
  }
  for (int a = 0; a < n; ++a)
    if (!visited[a]) throw std::invalid_argument("cannot write disconnected graph");
  for (int b = 0; b < graph.bond_count(); ++b)
    if (!tree_bond[b]) back_edges.push_back(b);

  // ring closure bookkeeping: per atom, the back edges it opens/closes
  std::vector<std::vector<int>> opens(n), closes(n);
  for (int b : back_edges) {
    const Bond& bond = graph.bond(b);
    const bool i_first = preorder_rank[bond.i] < preorder_rank[bond.j];
    opens[i_first ? bond.i : bond.j].push_back(b);
    closes[i_first ? bond.j : bond.i].push_back(b);
  }

  std::map<int, int> bond_to_label; // back-edge bond index -> ring label
  std::set<int> labels_in_use;
  auto allocate_label = [&]() {
    int label = 1;
    while (labels_in_use.count(label)) ++label;
    if (label > 99) throw std::invalid_argument("more than 99 simultaneous ring closures");
    labels_in_use.insert(label);
    return label;
  };
  auto label_token = [](int label) {
    return label <= 9 ? std::to_string(label) : "%" + std::to_string(label);
  };

  std::string out;
  std::function<void(int)> emit = [&](int atom) {
    if (emit_order) emit_order->push_back(atom);
    out += atom_token(graph.atom(atom));

    // close ring bonds whose opening end was already emitted
    for (int b : closes[atom]) {
      out += label_token(bond_to_label.at(b));
      labels_in_use.erase(bond_to_label.at(b));
    }
    // open ring bonds anchored here
    for (int b : opens[atom]) {
      const Bond& bond = graph.bond(b);
      const int label = allocate_label();
      bond_to_label[b] = label;
      if (bond.order != default_bond(graph.atom(bond.i), graph.atom(bond.j)))
        out += bond_symbol(bond.order);
      out += label_token(label);
    }

    const auto& children = tree_children[atom];
    for (size_t c = 0; c < children.size(); ++c) {
      const int child = children[c];
      const Bond* bond = graph.find_bond(atom, child);
      std::string bond_str;
      if (bond->order != default_bond(graph.atom(atom), graph.atom(child)))
        bond_str = bond_symbol(bond->order);
      const bool last = c + 1 == children.size();
      if (!last) out += '(';
      out += bond_str;
      emit(child);
      if (!last) out += ')';
    }
  };
  emit(0);
  return out;
}

} // namespace graphsal

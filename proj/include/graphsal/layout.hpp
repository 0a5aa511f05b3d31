#pragma once

#include <vector>

#include "graphsal/molgraph.hpp"

namespace graphsal {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Simple cycles up to max_size atoms, deduplicated as sorted atom sets.
std::vector<std::vector<int>> find_rings(const MolecularGraph& graph, int max_size = 8);

// Deterministic seeded force layout with ring regularization: bond-length
// springs, all-pairs repulsion, and a per-ring pull toward the regular
// polygon. Identical graphs always produce identical coordinates.
std::vector<Point> layout_2d(const MolecularGraph& graph);

} // namespace graphsal

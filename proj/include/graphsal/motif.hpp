#pragma once

#include <vector>

#include "graphsal/molgraph.hpp"

namespace graphsal {

// All embeddings of `motif` in `graph` under backtracking subgraph
// isomorphism (monomorphism: every motif bond must map onto a graph bond
// of equal order between atoms of equal element and aromaticity; extra
// graph bonds among mapped atoms are permitted). Embeddings are
// deduplicated as sorted atom-index sets, returned in lexicographic
// order. Empty result means no match.
std::vector<std::vector<int>> match_motif(const MolecularGraph& graph,
                                          const MolecularGraph& motif);

} // namespace graphsal

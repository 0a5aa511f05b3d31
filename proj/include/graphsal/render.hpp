#pragma once

#include <string>
#include <vector>

#include "graphsal/molgraph.hpp"

namespace graphsal {

// Canvas geometry and score-to-color mapping. Scores are normalized by
// the molecule's max absolute value; unsigned scores use a sequential
// white-to-red scale, signed scores a diverging blue/white/red scale
// where zero maps to pure white exactly.
struct RenderSpec {
  int width = 480;
  int height = 360;
  double atom_radius = 14.0;
};

std::string render_molecule_svg(const MolecularGraph& graph,
                                const std::vector<double>& scores, bool is_signed,
                                const RenderSpec& spec = RenderSpec{});

} // namespace graphsal

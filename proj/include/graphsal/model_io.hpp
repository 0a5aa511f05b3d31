#pragma once

#include <string>

#include "graphsal/gnn.hpp"

namespace graphsal {

// Versioned JSON model files. Doubles serialize with shortest-round-trip
// decimal representation, so save/load is value-exact. Loading a file
// with a newer format_version fails loudly.
std::string model_to_json_text(const ModelParams& params);
ModelParams model_from_json_text(const std::string& text);

void save_model(const ModelParams& params, const std::string& path);
ModelParams load_model(const std::string& path);

} // namespace graphsal

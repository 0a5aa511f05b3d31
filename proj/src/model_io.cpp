#include "graphsal/model_io.hpp"

#include <stdexcept>

#include "json.hpp"

#include "graphsal/csv.hpp"

namespace graphsal {

namespace {

constexpr int kFormatVersion = 1;

using nlohmann::json;

} // namespace

std::string model_to_json_text(const ModelParams& params) {
  json j;
  j["format_version"] = kFormatVersion;
  j["model_kind"] = model_kind_name(params.kind);
  j["task"] = task_name(params.task);
  j["hidden_dim"] = params.hidden_dim;
  j["layers"] = params.layers;
  j["dropout_rate"] = params.dropout_rate;

  json vocab = json::array();
  for (const auto& [element, aromatic] : params.vocab.entries())
    vocab.push_back({{"element", element}, {"aromatic", aromatic}});
  j["vocab"] = vocab;

  json tensors = json::object();
  for (const auto& [name, tensor] : params.tensors) {
    json rows = json::array();
    for (int64_t r = 0; r < tensor.rows(); ++r) {
      json row = json::array();
      for (int64_t c = 0; c < tensor.cols(); ++c) row.push_back(tensor.at(r, c));
      rows.push_back(std::move(row));
    }
    tensors[name] = std::move(rows);
  }
  j["tensors"] = std::move(tensors);
  return j.dump(1);
}

ModelParams model_from_json_text(const std::string& text) {
  json j = json::parse(text);
  const int version = j.at("format_version").get<int>();
  if (version > kFormatVersion)
    throw std::runtime_error("model file format_version " + std::to_string(version) +
                             " is newer than supported version " +
                             std::to_string(kFormatVersion));

  ModelParams p;
  p.kind = model_kind_from_name(j.at("model_kind").get<std::string>());
  p.task = task_from_name(j.at("task").get<std::string>());
  p.hidden_dim = j.at("hidden_dim").get<int>();
  p.layers = j.at("layers").get<int>();
  p.dropout_rate = j.at("dropout_rate").get<double>();

  std::vector<std::pair<std::string, bool>> entries;
  for (const json& e : j.at("vocab"))
    entries.emplace_back(e.at("element").get<std::string>(), e.at("aromatic").get<bool>());
  p.vocab = AtomVocabulary::from_entries(std::move(entries));

  for (const auto& [name, rows] : j.at("tensors").items()) {
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
      throw std::runtime_error("model file: tensor '" + name + "' is not a 2-D array");
    const int64_t r = static_cast<int64_t>(rows.size());
    const int64_t c = static_cast<int64_t>(rows[0].size());
    Tensor t(r, c);
    for (int64_t i = 0; i < r; ++i) {
      const json& row = rows[i];
      if (static_cast<int64_t>(row.size()) != c)
        throw std::runtime_error("model file: tensor '" + name + "' has ragged rows");
      for (int64_t k = 0; k < c; ++k) t.at(i, k) = row[k].get<double>();
    }
    t.check_finite(("model tensor " + name).c_str());
    p.tensors.emplace(name, std::move(t));
  }
  return p;
}

void save_model(const ModelParams& params, const std::string& path) {
  write_file_atomic(path, model_to_json_text(params));
}

ModelParams load_model(const std::string& path) {
  try {
    return model_from_json_text(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error("model file " + path + ": " + e.what());
  }
}

} // namespace graphsal

#pragma once

#include <string>
#include <vector>

namespace graphsal {

struct DatasetRow {
  std::string smiles;
  double label = 0.0;
};

// Reads a `smiles,label` CSV. Labels may be {0,1} for classification or
// any decimal for regression. Malformed rows are reported with their
// 1-based line number.
std::vector<DatasetRow> read_dataset_csv(const std::string& path);

void write_dataset_csv(const std::string& path, const std::vector<DatasetRow>& rows);

// Atomically replace `path` with `content` (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace graphsal

#include "graphsal/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphsal {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

std::vector<DatasetRow> read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file, expected header 'smiles,label'");
  {
    std::string header = trim(line);
    const size_t comma = header.find(',');
    const std::string col0 = comma == std::string::npos ? header : trim(header.substr(0, comma));
    const std::string col1 = comma == std::string::npos ? "" : trim(header.substr(comma + 1));
    if (col0 != "smiles")
      throw std::runtime_error(path + ": line 1: missing column 'smiles' in header");
    if (col1 != "label")
      throw std::runtime_error(path + ": line 1: missing column 'label' in header");
  }

  std::vector<DatasetRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const size_t comma = t.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected 'smiles,label', got '" + t + "'");
    DatasetRow row;
    row.smiles = trim(t.substr(0, comma));
    const std::string label_str = trim(t.substr(comma + 1));
    if (row.smiles.empty())
      throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": empty smiles");
    try {
      size_t used = 0;
      row.label = std::stod(label_str, &used);
      if (used != label_str.size()) throw std::invalid_argument(label_str);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": label '" + label_str + "' is not a number");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_dataset_csv(const std::string& path, const std::vector<DatasetRow>& rows) {
  std::ostringstream out;
  out << "smiles,label\n";
  for (const DatasetRow& row : rows) {
    char buf[64];
    // integral labels print bare so classification files read back cleanly
    if (row.label == static_cast<long long>(row.label))
      std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(row.label));
    else
      std::snprintf(buf, sizeof buf, "%.17g", row.label);
    out << row.smiles << ',' << buf << '\n';
  }
  write_file_atomic(path, out.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " +
                             std::strerror(errno));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace graphsal

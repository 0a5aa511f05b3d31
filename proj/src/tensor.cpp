#include "graphsal/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace graphsal {

Tensor::Tensor(int64_t rows, int64_t cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), 0.0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("tensor: negative dimension");
}

Tensor::Tensor(int64_t rows, int64_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (static_cast<int64_t>(data_.size()) != rows * cols)
    throw std::invalid_argument("tensor: data length " + std::to_string(data_.size()) +
                                " does not match shape " + shape_str());
  check_finite("tensor");
}

Tensor Tensor::full(int64_t rows, int64_t cols, double value) {
  Tensor t(rows, cols);
  for (double& v : t.data_) v = value;
  t.check_finite("tensor::full");
  return t;
}

Tensor Tensor::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  int64_t r = static_cast<int64_t>(rows.size());
  int64_t c = r == 0 ? 0 : static_cast<int64_t>(rows.begin()->size());
  Tensor t(r, c);
  int64_t i = 0;
  for (const auto& row : rows) {
    if (static_cast<int64_t>(row.size()) != c)
      throw std::invalid_argument("tensor::from_rows: ragged rows");
    int64_t j = 0;
    for (double v : row) t.at(i, j++) = v;
    ++i;
  }
  t.check_finite("tensor::from_rows");
  return t;
}

std::string Tensor::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void Tensor::check_finite(const char* what) const {
  for (double v : data_)
    if (!std::isfinite(v))
      throw std::runtime_error(std::string(what) + ": non-finite value in " + shape_str() +
                               " tensor");
}

} // namespace graphsal

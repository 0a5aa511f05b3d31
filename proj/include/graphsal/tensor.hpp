#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace graphsal {

// Dense row-major matrix of doubles. Scalars are 1x1, vectors 1xN or Nx1.
// Every construction path rejects NaN/Inf: a non-finite value anywhere in
// the numeric pipeline is a hard error, never silently propagated.
class Tensor {
public:
  Tensor() = default;
  Tensor(int64_t rows, int64_t cols); // zero-filled
  Tensor(int64_t rows, int64_t cols, std::vector<double> data);

  static Tensor full(int64_t rows, int64_t cols, double value);
  static Tensor from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }
  int64_t size() const { return rows_ * cols_; }
  bool empty() const { return data_.empty(); }

  double at(int64_t r, int64_t c) const { return data_[r * cols_ + c]; }
  double& at(int64_t r, int64_t c) { return data_[r * cols_ + c]; }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }
  const std::vector<double>& values() const { return data_; }
  std::vector<double>& values() { return data_; }

  bool same_shape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string shape_str() const;

  // Throws std::runtime_error naming `what` if any entry is NaN/Inf.
  void check_finite(const char* what) const;

  bool operator==(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

private:
  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<double> data_;
};

} // namespace graphsal

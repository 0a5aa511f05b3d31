#include "graphsal/tape.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace graphsal {

namespace {

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " + a.shape_str() +
                              " and " + b.shape_str());
}

} // namespace

const Tensor& GradientMap::at(ValueId id) const {
  auto it = grads_.find(id.idx);
  if (it == grads_.end())
    throw std::out_of_range("gradient map: node " + std::to_string(id.idx) +
                            " was not tracked");
  return it->second;
}

void Tape::check_id(ValueId id, const char* op) const {
  if (!id.valid() || id.idx >= static_cast<int32_t>(nodes_.size()))
    throw std::invalid_argument(std::string(op) + ": invalid tape value id");
}

ValueId Tape::push(Node n) {
  n.value.check_finite("tape op output");
  nodes_.push_back(std::move(n));
  return ValueId{static_cast<int32_t>(nodes_.size() - 1)};
}

ValueId Tape::leaf(Tensor value) {
  value.check_finite("leaf");
  ValueId id = push(Node{Op::leaf, -1, -1, std::move(value), {}, 0.0});
  tracked_.push_back(id.idx);
  return id;
}

ValueId Tape::constant(Tensor value) {
  value.check_finite("constant");
  return push(Node{Op::constant, -1, -1, std::move(value), {}, 0.0});
}

void Tape::track(ValueId id) {
  check_id(id, "track");
  tracked_.push_back(id.idx);
}

ValueId Tape::matmul(ValueId a, ValueId b) {
  check_id(a, "matmul");
  check_id(b, "matmul");
  const Tensor& A = val(a.idx);
  const Tensor& B = val(b.idx);
  if (A.cols() != B.rows()) shape_error("matmul", A, B);
  Tensor out(A.rows(), B.cols());
  const int64_t m = A.rows(), k = A.cols(), n = B.cols();
  for (int64_t i = 0; i < m; ++i) {
    const double* arow = A.data() + i * k;
    double* orow = out.data() + i * n;
    for (int64_t p = 0; p < k; ++p) {
      const double av = arow[p];
      const double* brow = B.data() + p * n;
      for (int64_t j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  return push(Node{Op::matmul, a.idx, b.idx, std::move(out), {}, 0.0});
}

ValueId Tape::add(ValueId a, ValueId b) {
  check_id(a, "add");
  check_id(b, "add");
  const Tensor& A = val(a.idx);
  const Tensor& B = val(b.idx);
  if (!A.same_shape(B)) shape_error("add", A, B);
  Tensor out = A;
  for (int64_t i = 0; i < out.size(); ++i) out.data()[i] += B.data()[i];
  return push(Node{Op::add, a.idx, b.idx, std::move(out), {}, 0.0});
}

ValueId Tape::add_row(ValueId x, ValueId row) {
  check_id(x, "add_row");
  check_id(row, "add_row");
  const Tensor& X = val(x.idx);
  const Tensor& R = val(row.idx);
  if (R.rows() != 1 || R.cols() != X.cols()) shape_error("add_row", X, R);
  Tensor out = X;
  for (int64_t i = 0; i < out.rows(); ++i)
    for (int64_t j = 0; j < out.cols(); ++j) out.at(i, j) += R.at(0, j);
  return push(Node{Op::add_row, x.idx, row.idx, std::move(out), {}, 0.0});
}

ValueId Tape::mul(ValueId a, ValueId b) {
  check_id(a, "mul");
  check_id(b, "mul");
  const Tensor& A = val(a.idx);
  const Tensor& B = val(b.idx);
  if (!A.same_shape(B)) shape_error("mul", A, B);
  Tensor out = A;
  for (int64_t i = 0; i < out.size(); ++i) out.data()[i] *= B.data()[i];
  return push(Node{Op::mul, a.idx, b.idx, std::move(out), {}, 0.0});
}

ValueId Tape::scale(ValueId x, double factor) {
  check_id(x, "scale");
  Tensor out = val(x.idx);
  for (int64_t i = 0; i < out.size(); ++i) out.data()[i] *= factor;
  return push(Node{Op::scale, x.idx, -1, std::move(out), {}, factor});
}

ValueId Tape::sigmoid(ValueId x) {
  check_id(x, "sigmoid");
  Tensor out = val(x.idx);
  for (int64_t i = 0; i < out.size(); ++i) {
    const double v = out.data()[i];
    // branch keeps exp() argument negative for numeric stability
    out.data()[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                             : std::exp(v) / (1.0 + std::exp(v));
  }
  return push(Node{Op::sigmoid, x.idx, -1, std::move(out), {}, 0.0});
}

ValueId Tape::tanh(ValueId x) {
  check_id(x, "tanh");
  Tensor out = val(x.idx);
  for (int64_t i = 0; i < out.size(); ++i) out.data()[i] = std::tanh(out.data()[i]);
  return push(Node{Op::tanh_fn, x.idx, -1, std::move(out), {}, 0.0});
}

ValueId Tape::relu(ValueId x) {
  check_id(x, "relu");
  Tensor out = val(x.idx);
  for (int64_t i = 0; i < out.size(); ++i)
    if (out.data()[i] < 0.0) out.data()[i] = 0.0;
  return push(Node{Op::relu, x.idx, -1, std::move(out), {}, 0.0});
}

ValueId Tape::row_softmax(ValueId x) {
  check_id(x, "row_softmax");
  const Tensor& X = val(x.idx);
  Tensor out(X.rows(), X.cols());
  for (int64_t i = 0; i < X.rows(); ++i) {
    double mx = X.at(i, 0);
    for (int64_t j = 1; j < X.cols(); ++j) mx = std::max(mx, X.at(i, j));
    double sum = 0.0;
    for (int64_t j = 0; j < X.cols(); ++j) {
      const double e = std::exp(X.at(i, j) - mx);
      out.at(i, j) = e;
      sum += e;
    }
    for (int64_t j = 0; j < X.cols(); ++j) out.at(i, j) /= sum;
  }
  return push(Node{Op::row_softmax, x.idx, -1, std::move(out), {}, 0.0});
}

ValueId Tape::sum_all(ValueId x) {
  check_id(x, "sum_all");
  const Tensor& X = val(x.idx);
  double s = 0.0;
  for (int64_t i = 0; i < X.size(); ++i) s += X.data()[i];
  Tensor out(1, 1);
  out.at(0, 0) = s;
  return push(Node{Op::sum_all, x.idx, -1, std::move(out), {}, 0.0});
}

ValueId Tape::gather_rows(ValueId x, std::vector<int64_t> rows) {
  check_id(x, "gather_rows");
  const Tensor& X = val(x.idx);
  for (int64_t r : rows)
    if (r < 0 || r >= X.rows())
      throw std::invalid_argument("gather_rows: row " + std::to_string(r) +
                                  " out of range for " + X.shape_str());
  Tensor out(static_cast<int64_t>(rows.size()), X.cols());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int64_t j = 0; j < X.cols(); ++j)
      out.at(static_cast<int64_t>(i), j) = X.at(rows[i], j);
  return push(Node{Op::gather_rows, x.idx, -1, std::move(out), std::move(rows), 0.0});
}

ValueId Tape::scatter_add_rows(ValueId x, std::vector<int64_t> dst, int64_t out_rows) {
  check_id(x, "scatter_add_rows");
  const Tensor& X = val(x.idx);
  if (static_cast<int64_t>(dst.size()) != X.rows())
    throw std::invalid_argument("scatter_add_rows: " + std::to_string(dst.size()) +
                                " destinations for " + X.shape_str());
  for (int64_t r : dst)
    if (r < 0 || r >= out_rows)
      throw std::invalid_argument("scatter_add_rows: destination " + std::to_string(r) +
                                  " out of range 0.." + std::to_string(out_rows - 1));
  Tensor out(out_rows, X.cols());
  for (size_t i = 0; i < dst.size(); ++i)
    for (int64_t j = 0; j < X.cols(); ++j)
      out.at(dst[i], j) += X.at(static_cast<int64_t>(i), j);
  return push(Node{Op::scatter_add_rows, x.idx, -1, std::move(out), std::move(dst), 0.0});
}

ValueId Tape::apply_mask(ValueId x, const Tensor& mask) {
  check_id(x, "apply_mask");
  const Tensor& X = val(x.idx);
  if (!X.same_shape(mask)) shape_error("apply_mask", X, mask);
  for (int64_t i = 0; i < mask.size(); ++i) {
    const double m = mask.data()[i];
    if (m != 0.0 && m != 1.0)
      throw std::invalid_argument("apply_mask: mask entry " + std::to_string(m) +
                                  " is not 0.0 or 1.0");
  }
  Tensor out = X;
  for (int64_t i = 0; i < out.size(); ++i) out.data()[i] *= mask.data()[i];
  Node n{Op::apply_mask, x.idx, -1, std::move(out), {}, 0.0};
  // the mask is stored as a detached constant so backward can reapply it
  nodes_.push_back(Node{Op::constant, -1, -1, mask, {}, 0.0});
  n.b = static_cast<int32_t>(nodes_.size() - 1);
  return push(std::move(n));
}

const Tensor& Tape::value(ValueId id) const {
  check_id(id, "value");
  return nodes_[id.idx].value;
}

GradientMap Tape::backward(ValueId output, double seed) const {
  check_id(output, "backward");
  const Tensor& out_val = val(output.idx);
  if (out_val.rows() != 1 || out_val.cols() != 1)
    throw std::invalid_argument("backward: output must be a 1x1 scalar, got " +
                                out_val.shape_str());

  std::vector<Tensor> grads(nodes_.size());
  auto grad_of = [&](int32_t i) -> Tensor& {
    if (grads[i].empty() && nodes_[i].value.size() > 0)
      grads[i] = Tensor(nodes_[i].value.rows(), nodes_[i].value.cols());
    return grads[i];
  };

  grad_of(output.idx).at(0, 0) = seed;

  for (int32_t i = output.idx; i >= 0; --i) {
    if (grads[i].empty()) continue;
    const Node& n = nodes_[i];
    const Tensor& g = grads[i];
    switch (n.op) {
      case Op::leaf:
      case Op::constant:
        break;
      case Op::matmul: {
        if (nodes_[n.a].op != Op::constant) {
          // dA += G * B^T
          Tensor& da = grad_of(n.a);
          const Tensor& B = val(n.b);
          for (int64_t r = 0; r < da.rows(); ++r)
            for (int64_t c = 0; c < da.cols(); ++c) {
              double s = 0.0;
              for (int64_t j = 0; j < g.cols(); ++j) s += g.at(r, j) * B.at(c, j);
              da.at(r, c) += s;
            }
        }
        if (nodes_[n.b].op != Op::constant) {
          // dB += A^T * G
          Tensor& db = grad_of(n.b);
          const Tensor& A = val(n.a);
          for (int64_t r = 0; r < db.rows(); ++r)
            for (int64_t c = 0; c < db.cols(); ++c) {
              double s = 0.0;
              for (int64_t j = 0; j < g.rows(); ++j) s += A.at(j, r) * g.at(j, c);
              db.at(r, c) += s;
            }
        }
        break;
      }
      case Op::add: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (int64_t p = 0; p < g.size(); ++p) da.data()[p] += g.data()[p];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (int64_t p = 0; p < g.size(); ++p) db.data()[p] += g.data()[p];
        }
        break;
      }
      case Op::add_row: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          for (int64_t p = 0; p < g.size(); ++p) dx.data()[p] += g.data()[p];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& dr = grad_of(n.b);
          for (int64_t r = 0; r < g.rows(); ++r)
            for (int64_t c = 0; c < g.cols(); ++c) dr.at(0, c) += g.at(r, c);
        }
        break;
      }
      case Op::mul: {
        const Tensor& A = val(n.a);
        const Tensor& B = val(n.b);
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (int64_t p = 0; p < g.size(); ++p) da.data()[p] += g.data()[p] * B.data()[p];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (int64_t p = 0; p < g.size(); ++p) db.data()[p] += g.data()[p] * A.data()[p];
        }
        break;
      }
      case Op::scale: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          for (int64_t p = 0; p < g.size(); ++p) dx.data()[p] += g.data()[p] * n.factor;
        }
        break;
      }
      case Op::sigmoid: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          const Tensor& y = n.value;
          for (int64_t p = 0; p < g.size(); ++p) {
            const double yv = y.data()[p];
            dx.data()[p] += g.data()[p] * yv * (1.0 - yv);
          }
        }
        break;
      }
      case Op::tanh_fn: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          const Tensor& y = n.value;
          for (int64_t p = 0; p < g.size(); ++p)
            dx.data()[p] += g.data()[p] * (1.0 - y.data()[p] * y.data()[p]);
        }
        break;
      }
      case Op::relu: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          const Tensor& x = val(n.a);
          for (int64_t p = 0; p < g.size(); ++p)
            if (x.data()[p] > 0.0) dx.data()[p] += g.data()[p];
        }
        break;
      }
      case Op::row_softmax: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          const Tensor& y = n.value;
          for (int64_t r = 0; r < y.rows(); ++r) {
            double dot = 0.0;
            for (int64_t c = 0; c < y.cols(); ++c) dot += g.at(r, c) * y.at(r, c);
            for (int64_t c = 0; c < y.cols(); ++c)
              dx.at(r, c) += y.at(r, c) * (g.at(r, c) - dot);
          }
        }
        break;
      }
      case Op::sum_all: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          const double gv = g.at(0, 0);
          for (int64_t p = 0; p < dx.size(); ++p) dx.data()[p] += gv;
        }
        break;
      }
      case Op::gather_rows: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          for (size_t r = 0; r < n.rows.size(); ++r)
            for (int64_t c = 0; c < g.cols(); ++c)
              dx.at(n.rows[r], c) += g.at(static_cast<int64_t>(r), c);
        }
        break;
      }
      case Op::scatter_add_rows: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          for (size_t r = 0; r < n.rows.size(); ++r)
            for (int64_t c = 0; c < g.cols(); ++c)
              dx.at(static_cast<int64_t>(r), c) += g.at(n.rows[r], c);
        }
        break;
      }
      case Op::apply_mask: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& dx = grad_of(n.a);
          const Tensor& mask = val(n.b);
          for (int64_t p = 0; p < g.size(); ++p) dx.data()[p] += g.data()[p] * mask.data()[p];
        }
        break;
      }
    }
  }

  GradientMap result;
  for (int32_t id : tracked_) {
    if (result.grads_.count(id)) continue;
    if (grads[id].empty())
      result.grads_[id] = Tensor(nodes_[id].value.rows(), nodes_[id].value.cols());
    else
      result.grads_[id] = std::move(grads[id]);
  }
  return result;
}

} // namespace graphsal

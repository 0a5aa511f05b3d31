#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "graphsal/tensor.hpp"

namespace graphsal {

// Handle to a value recorded on a Tape.
struct ValueId {
  int32_t idx = -1;
  bool valid() const { return idx >= 0; }
};

// Gradients of a scalar output with respect to tracked tape nodes.
// A tracked node that does not influence the output maps to a zero
// tensor of the node's shape.
class GradientMap {
public:
  const Tensor& at(ValueId id) const;
  bool contains(ValueId id) const { return grads_.count(id.idx) != 0; }

private:
  friend class Tape;
  std::unordered_map<int32_t, Tensor> grads_;
};

// Reverse-mode autodiff tape over dense 2-D tensors.
//
// Records are appended in topological order during the forward pass;
// backward() walks them exactly once in reverse. Leaves registered via
// leaf() (and any node marked with track()) receive gradients. Constants
// never do. The primitive set is the minimum basis for the two graph
// network architectures: matmul, add, row-broadcast add, elementwise mul,
// scalar scale, sigmoid, tanh, relu, row-softmax, sum-all, gather-rows,
// scatter-add-rows and binary-mask application.
//
// A tape is single-threaded. Distinct tapes may be evaluated concurrently
// over shared read-only parameter tensors.
class Tape {
public:
  // Nodes that receive gradients.
  ValueId leaf(Tensor value);
  // Nodes that never receive gradients (inputs treated as fixed).
  ValueId constant(Tensor value);

  ValueId matmul(ValueId a, ValueId b);
  ValueId add(ValueId a, ValueId b);
  // x: n x d, row: 1 x d, added to every row of x.
  ValueId add_row(ValueId x, ValueId row);
  ValueId mul(ValueId a, ValueId b);
  ValueId scale(ValueId x, double factor);
  ValueId sigmoid(ValueId x);
  ValueId tanh(ValueId x);
  ValueId relu(ValueId x);
  ValueId row_softmax(ValueId x);
  ValueId sum_all(ValueId x); // -> 1x1
  ValueId gather_rows(ValueId x, std::vector<int64_t> rows);
  // out[dst[r]] += x[r]; out has out_rows rows.
  ValueId scatter_add_rows(ValueId x, std::vector<int64_t> dst, int64_t out_rows);
  // Elementwise x * mask; mask entries must be exactly 0.0 or 1.0 and get
  // no gradient.
  ValueId apply_mask(ValueId x, const Tensor& mask);

  const Tensor& value(ValueId id) const;
  size_t node_count() const { return nodes_.size(); }

  // Request the gradient of a non-leaf node (e.g. the embedded input after
  // noise was added).
  void track(ValueId id);

  // d(output)/d(node) for every leaf and tracked node. `output` must be a
  // scalar (1x1). `seed` is the incoming gradient of the output itself,
  // used to fold a closed-form loss derivative into the pass.
  GradientMap backward(ValueId output, double seed = 1.0) const;

private:
  enum class Op {
    leaf,
    constant,
    matmul,
    add,
    add_row,
    mul,
    scale,
    sigmoid,
    tanh_fn,
    relu,
    row_softmax,
    sum_all,
    gather_rows,
    scatter_add_rows,
    apply_mask,
  };

  struct Node {
    Op op;
    int32_t a = -1;
    int32_t b = -1;
    Tensor value;
    std::vector<int64_t> rows; // gather/scatter index lists
    double factor = 0.0;       // scale
  };

  ValueId push(Node n);
  const Tensor& val(int32_t i) const { return nodes_[i].value; }
  void check_id(ValueId id, const char* op) const;

  std::vector<Node> nodes_;
  std::vector<int32_t> tracked_;
};

} // namespace graphsal

#pragma once

#include <functional>

#include "graphsal/tape.hpp"
#include "graphsal/tensor.hpp"

namespace graphsal {

// A deterministic scalar function of one tensor, expressed as a tape
// builder: given a fresh tape and the input registered as a leaf, return
// the scalar output node. All other randomness (masks, parameters) must
// be frozen inside the closure.
using ScalarFn = std::function<ValueId(Tape&, ValueId)>;

// Compares the tape gradient of `f` at `x` against central finite
// differences with step `eps`. Returns the max over coordinates of
//   |analytic - fd| / max(|analytic|, |fd|, 1e-12).
double grad_check(const ScalarFn& f, const Tensor& x, double eps);

} // namespace graphsal

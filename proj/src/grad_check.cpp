#include "graphsal/grad_check.hpp"

#include <cmath>
#include <stdexcept>

namespace graphsal {

namespace {

double evaluate(const ScalarFn& f, const Tensor& x) {
  Tape tape;
  ValueId leaf = tape.leaf(x);
  ValueId out = f(tape, leaf);
  const Tensor& v = tape.value(out);
  if (v.rows() != 1 || v.cols() != 1)
    throw std::invalid_argument("grad_check: function output is not scalar");
  const double y = v.at(0, 0);
  if (!std::isfinite(y)) throw std::runtime_error("grad_check: non-finite forward value");
  return y;
}

} // namespace

double grad_check(const ScalarFn& f, const Tensor& x, double eps) {
  Tape tape;
  ValueId leaf = tape.leaf(x);
  ValueId out = f(tape, leaf);
  if (tape.value(out).rows() != 1 || tape.value(out).cols() != 1)
    throw std::invalid_argument("grad_check: function output is not scalar");
  GradientMap grads = tape.backward(out);
  const Tensor& analytic = grads.at(leaf);

  double worst = 0.0;
  Tensor probe = x;
  for (int64_t i = 0; i < x.size(); ++i) {
    const double orig = probe.data()[i];
    probe.data()[i] = orig + eps;
    const double up = evaluate(f, probe);
    probe.data()[i] = orig - eps;
    const double down = evaluate(f, probe);
    probe.data()[i] = orig;
    const double fd = (up - down) / (2.0 * eps);
    const double a = analytic.data()[i];
    const double denom = std::max({std::fabs(a), std::fabs(fd), 1e-12});
    worst = std::max(worst, std::fabs(a - fd) / denom);
  }
  return worst;
}

} // namespace graphsal

#pragma once

#include <functional>

namespace graphsal {

// Worker-thread policy for sample/molecule/repeat loops. Results never
// depend on it: every parallel site writes into per-index slots and
// reduces in index order, so serial and parallel runs are bit-identical.
struct ExecPolicy {
  int threads = 1;

  static ExecPolicy serial() { return ExecPolicy{1}; }
  // GRAPHSAL_THREADS env var caps it; defaults to the OpenMP thread count.
  static ExecPolicy from_env();
};

// Runs work(0) .. work(count-1), each exactly once.
//
// The serial path is the reference implementation; the OpenMP path must
// be observationally identical (tests compare them bitwise, the bench
// tool compares their throughput).
void run_indexed_serial(int count, const std::function<void(int)>& work);
void run_indexed(int count, const ExecPolicy& policy, const std::function<void(int)>& work);

} // namespace graphsal

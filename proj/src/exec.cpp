#include "graphsal/exec.hpp"

#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphsal {

ExecPolicy ExecPolicy::from_env() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("GRAPHSAL_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) threads = requested;
  }
  return ExecPolicy{threads};
}

void run_indexed_serial(int count, const std::function<void(int)>& work) {
  for (int i = 0; i < count; ++i) work(i);
}

void run_indexed(int count, const ExecPolicy& policy, const std::function<void(int)>& work) {
  if (policy.threads <= 1 || count <= 1) {
    run_indexed_serial(count, work);
    return;
  }
#ifdef _OPENMP
  // exceptions may not unwind out of a parallel region; capture the first
  // one (lowest index, to stay deterministic) and rethrow outside
  std::vector<std::exception_ptr> errors(static_cast<size_t>(count));
#pragma omp parallel for num_threads(policy.threads) schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    try {
      work(i);
    } catch (...) {
      errors[static_cast<size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
#else
  run_indexed_serial(count, work);
#endif
}

} // namespace graphsal

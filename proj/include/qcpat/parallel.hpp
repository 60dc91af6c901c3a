#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcpat {

// Execution policy for the compute kernels.  Serial runs iterations on the
// calling thread in index order; Parallel may distribute them over OpenMP
// threads.  Kernels written against this interface must produce results that
// are independent of the policy (deterministic merge of per-index results).
enum class Exec { Serial, Parallel };

// Runs f(i) for i in [0, n).  In Parallel mode the first exception thrown by
// any iteration is captured and rethrown on the calling thread once all
// iterations have finished.
template <class F>
void parallel_for(Exec ex, std::size_t n, F&& f) {
#ifdef _OPENMP
  if (ex == Exec::Parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(qcpat_parallel_for_err)
        {
          if (!err) err = std::current_exception();
        }
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  (void)ex;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace qcpat

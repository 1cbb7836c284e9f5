#include "maass/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maass::parallel {

int thread_cap() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("MAASS_LSERIES_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) n = v;
    } catch (const std::exception&) {
    }
  }
  return n;
#else
  return 1;
#endif
}

void for_each_index(long n, const std::function<void(long)>& body) {
  std::exception_ptr err;
  long err_index = n;
  std::mutex mu;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_cap())
#endif
  for (long i = 0; i < n; ++i) {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (i > err_index) continue;
    }
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (i < err_index) {
        err_index = i;
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace maass::parallel

#include "stochoptics/parallel.hpp"

#include <omp.h>

namespace stochoptics {

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int threads) { omp_set_num_threads(std::max(1, threads)); }

}  // namespace stochoptics

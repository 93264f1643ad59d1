#include "domkit/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace domkit {

#ifdef _OPENMP
void set_jobs(int jobs) {
  if (jobs <= 0) jobs = omp_get_num_procs();
  omp_set_num_threads(jobs);
}
int max_jobs() { return omp_get_max_threads(); }
#else
void set_jobs(int) {}
int max_jobs() { return 1; }
#endif

}  // namespace domkit

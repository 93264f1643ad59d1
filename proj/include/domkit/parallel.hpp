#pragma once

// Thread-count control for the OpenMP kernels. Results are identical at any
// job count; --jobs 1 forces sequential execution.

namespace domkit {

void set_jobs(int jobs);  // 0 = library default (all cores)
int max_jobs();

}  // namespace domkit

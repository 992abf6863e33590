#ifndef HEATCONTENT_PARALLEL_HPP
#define HEATCONTENT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace heatcontent {

/// Worker count used by parallel_for; defaults to the hardware concurrency.
std::size_t default_jobs();
void set_default_jobs(std::size_t jobs);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Callers write
/// results into index-addressed slots and reduce afterwards in index order,
/// so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t jobs = 0);

}  // namespace heatcontent

#endif

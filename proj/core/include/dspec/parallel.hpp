#ifndef DSPEC_PARALLEL_HPP
#define DSPEC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace dspec {

/// Worker count used by parallel_for. Defaults to 1 (serial).
void set_threads(int count);
int threads();

/// Runs fn(i) for i in [0, count). Work items must be independent; callers
/// write results into preallocated slots indexed by i, so the outcome does
/// not depend on scheduling. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace dspec

#endif

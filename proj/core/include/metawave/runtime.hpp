#pragma once

#include <functional>

namespace metawave {

/// Worker threads used by the element loops (default 1).  Results are
/// bitwise independent of the thread count: local element data is
/// computed in parallel, global insertion stays in mesh order.
void set_num_threads(int n);
int num_threads();

/// Run fn(i) for i in [0, n) over the configured worker threads.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace metawave

#pragma once

namespace inhomog {

// Worker cap: min(hardware_concurrency, INHOMOG_THREADS) with a floor of 1.
// All parallel reductions in the library are order-independent (set unions,
// minima), so results do not depend on this value.
unsigned worker_count();

} // namespace inhomog

#pragma once

namespace adsel {

// Execution policy for the data-parallel kernels. Every kernel has a serial
// reference path and an OpenMP path; both run the same per-item code, so
// results are bit-identical regardless of the mode or thread count.
enum class ExecMode {
    serial,
    parallel,
};

int max_threads();

} // namespace adsel

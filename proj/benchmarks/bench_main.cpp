#include <benchmark/benchmark.h>

// benchmark_main ships LTO objects from another compiler release, so main lives here.
BENCHMARK_MAIN();

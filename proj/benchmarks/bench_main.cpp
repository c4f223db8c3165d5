#include <benchmark/benchmark.h>

// The distribution's libbenchmark_main.a ships LTO bytecode tied to one exact
// compiler build, so the entry point lives here and only the shared library
// is linked.
BENCHMARK_MAIN();

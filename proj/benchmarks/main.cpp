// Copyright 2026 The picosvm Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();

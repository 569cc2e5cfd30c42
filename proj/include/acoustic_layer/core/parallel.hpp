// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ACOUSTIC_LAYER_CORE_PARALLEL_HPP
#define ACOUSTIC_LAYER_CORE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace acoustic_layer
{

// Worker count: hardware concurrency, capped by ACOUSTIC_LAYER_THREADS.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots so
// that output never depends on scheduling. The first exception thrown by any
// task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace acoustic_layer

#endif  // ACOUSTIC_LAYER_CORE_PARALLEL_HPP

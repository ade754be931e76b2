// Copyright 2026 the asr-ward authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace asrward {

// Thread cap: ASR_WARD_THREADS if set (>= 1), otherwise hardware concurrency.
std::size_t thread_budget();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks across at
// most thread_budget() threads. Callers write results into index i of a
// preallocated buffer, so the outcome is independent of scheduling. The first
// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace asrward

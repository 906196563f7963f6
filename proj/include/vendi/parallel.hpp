// Copyright 2026 The vendi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>

namespace vendi {

/// Number of worker threads used by parallel_for. Defaults to the hardware
/// concurrency; 0 restores the default.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/// Runs fn(i) for every i in [0, count). Work is handed out in index order
/// to at most thread_count() workers. Calls made from inside a worker run
/// serially on the calling thread, so nesting never oversubscribes.
///
/// Callers must make fn(i) depend only on i; results are then independent
/// of the thread count and of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Deterministic pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

/// Mixes a list of integers into a 64-bit seed via std::seed_seq, whose
/// output is fully specified by the standard and therefore portable.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// mt19937_64 seeded from derive_seed(parts).
std::mt19937_64 make_engine(std::initializer_list<std::uint64_t> parts);

}  // namespace vendi

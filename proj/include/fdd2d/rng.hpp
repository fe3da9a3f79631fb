#pragma once

#include <cstdint>
#include <random>

namespace fdd2d {

/// All randomness in the toolkit flows from this engine. Each drop owns one.
using Rng = std::mt19937_64;

/// Derives an independent seed for sub-stream `index` of `stream` under `master`.
/// Pure function of its arguments (splitmix64 mixing), so per-drop seeds do not
/// depend on execution order or worker count.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

}  // namespace fdd2d

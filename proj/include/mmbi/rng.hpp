#pragma once

#include <cstdint>
#include <random>

namespace mmbi {

using Rng = std::mt19937_64;

/// Independent, reproducible seed for stream `stream` of run `run`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run, std::uint64_t stream);

}  // namespace mmbi

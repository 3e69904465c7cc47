#pragma once

#include <cstdint>
#include <random>

#include "partcat/partition.hpp"
#include "partcat/text.hpp"

namespace partcat::testing {

// Fixed so that repeated runs draw the same instances.
inline constexpr std::uint64_t seed = 20190417;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(seed + salt); }

inline Partition P(std::string_view s) { return parse_partition(s); }

}  // namespace partcat::testing

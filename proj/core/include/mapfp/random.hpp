#pragma once

#include <cstddef>
#include <cstdint>

#include "mapfp/instance.hpp"

namespace mapfp {

// SplitMix64 with its published constants; the stream for a given seed is
// identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // (next() mod max_value) + 1, i.e. a value in 1..max_value.
  std::uint64_t draw(std::uint64_t max_value) noexcept { return next() % max_value + 1; }

 private:
  std::uint64_t state_;
};

// n profits, then n times, each drawn in 1..max_value.
Instance random_instance(std::size_t n, std::size_t m, std::uint64_t max_value, SplitMix64& rng);

}  // namespace mapfp

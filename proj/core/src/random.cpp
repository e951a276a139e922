#include "mapfp/random.hpp"

#include "mapfp/error.hpp"

namespace mapfp {

Instance random_instance(std::size_t n, std::size_t m, std::uint64_t max_value, SplitMix64& rng) {
  if (max_value < 1) throw Error(ErrorCode::ValidationError, "max value must be at least 1");
  std::vector<BigInt> a;
  std::vector<BigInt> b;
  a.reserve(n);
  b.reserve(n);
  for (std::size_t i = 0; i < n; ++i) a.emplace_back(rng.draw(max_value));
  for (std::size_t i = 0; i < n; ++i) b.emplace_back(rng.draw(max_value));
  return validate_instance(std::move(a), std::move(b), static_cast<std::int64_t>(m));
}

}  // namespace mapfp

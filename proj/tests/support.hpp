#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include <unistd.h>

#include "mapfp/instance.hpp"
#include "mapfp/random.hpp"

namespace mapfp::testing {

inline std::vector<BigInt> big(std::initializer_list<long long> xs) {
  std::vector<BigInt> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

inline Instance make(std::initializer_list<long long> a, std::initializer_list<long long> b,
                     std::int64_t m) {
  return validate_instance(big(a), big(b), m);
}

inline Rational frac(long long p, long long q) { return Rational(p, q); }

// Calls fn(assignment) for every one of the m^n assignments.
template <class Fn>
void for_each_assignment(std::size_t n, std::size_t m, Fn&& fn) {
  Assignment asg(n, 0);
  for (;;) {
    fn(static_cast<const Assignment&>(asg));
    std::size_t pos = n;
    for (;;) {
      if (pos == 0) return;
      --pos;
      if (++asg[pos] < m) break;
      asg[pos] = 0;
    }
  }
}

// Seeded instance with n in [n_lo, n_hi], m drawn from `ms`, entries in 1..max_value.
inline Instance random_small(SplitMix64& rng, std::size_t n_lo, std::size_t n_hi,
                             const std::vector<std::size_t>& ms, std::uint64_t max_value) {
  const std::size_t n = n_lo + rng.next() % (n_hi - n_lo + 1);
  const std::size_t m = ms[rng.next() % ms.size()];
  return random_instance(n, m, max_value, rng);
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("mapfp-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace mapfp::testing

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "chabauty/rational.hpp"

namespace chabauty::cli {

std::uint64_t splitmix64(std::uint64_t& state);

// Seed of the independent stream for trial `trial` of suite `stream`.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t trial);

// Portable sampling on top of mt19937_64; the standard distributions are
// implementation-defined, so bounded integers use rejection sampling here.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::string_view stream, std::uint64_t trial)
      : engine_(derive_seed(seed, stream, trial)) {}
  explicit TrialRng(std::uint64_t raw_seed) : engine_(raw_seed) {}

  // Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }
  // p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace chabauty::cli

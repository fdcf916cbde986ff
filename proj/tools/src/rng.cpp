#include "chabauty/cli/rng.hpp"

#include <limits>

namespace chabauty::cli {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t trial) {
  // FNV-1a of the stream name keeps suites on disjoint streams.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : stream) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = seed ^ h;
  splitmix64(state);
  state ^= trial;
  return splitmix64(state);
}

std::int64_t TrialRng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

Rational TrialRng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  std::int64_t p = uniform(-num_bound, num_bound);
  std::int64_t q = uniform(1, den_bound);
  Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
  r.canonicalize();
  return r;
}

}  // namespace chabauty::cli

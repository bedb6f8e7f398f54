#include "hazard/rng.h"

#include <cmath>

namespace hazard {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(const TrialSeed& seed) {
  return mix64(mix64(seed.master) ^ mix64(seed.trial + 0x632be59bd9b4e019ULL));
}

double TrialRng::exponential(double rate) { return -std::log(uniform_open()) / rate; }

std::uint64_t TrialRng::below(std::uint64_t bound) {
  // Rejection sampling on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace hazard

#ifndef HAZARD_RNG_H_
#define HAZARD_RNG_H_

#include <cstdint>
#include <random>

namespace hazard {

// Identifies one Monte Carlo trial. The same (master, trial) pair always
// yields the same random stream, independent of scheduling.
struct TrialSeed {
  std::uint64_t master = 0;
  std::uint64_t trial = 0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of the per-trial engine: a counter-based mix of master and index.
std::uint64_t derive_stream_seed(const TrialSeed& seed);

// Per-trial random stream (mt19937_64 seeded from derive_stream_seed).
class TrialRng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit TrialRng(const TrialSeed& seed) : engine_(derive_stream_seed(seed)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1).
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  bool bernoulli(double p) { return uniform() < p; }
  double exponential(double rate);
  double normal() { return normal_(engine_); }
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace hazard

#endif  // HAZARD_RNG_H_

#ifndef HAZARD_STATS_H_
#define HAZARD_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace hazard {

struct SampleSummary {
  double mean = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(count)
  std::size_t count = 0;
};

// Mean and standard error, accumulated in index order so the result does
// not depend on how the samples were produced.
SampleSummary summarize(std::span<const double> samples);

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hazard

#endif  // HAZARD_STATS_H_

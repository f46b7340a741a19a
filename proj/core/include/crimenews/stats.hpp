#pragma once

#include <span>

namespace crimenews::analytics {

/// Population standard deviation; percentiles interpolate linearly between
/// closest ranks (rank = p * (n - 1) over the sorted values).
struct SummaryStats {
    double mean = 0.0;
    double std = 0.0;
    double p25 = 0.0;
    double p50 = 0.0;
    double p75 = 0.0;
    double p100 = 0.0;
};

/// Throws Error(EmptyInput) on an empty span.
SummaryStats summary_stats(std::span<const double> values);

/// Single percentile, p in [0, 1], of already sorted values.
double percentile_sorted(std::span<const double> sorted, double p);

}  // namespace crimenews::analytics

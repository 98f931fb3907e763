#ifndef NURSESIM_STATS_HPP
#define NURSESIM_STATS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nursesim {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct Estimate {
    double mean = 0.0;
    double se = 0.0;  // sample sd / sqrt(n); 0 when n < 2
    std::size_t n = 0;
};

Estimate estimate(std::span<const double> xs);

// Spearman rank correlation with average ranks for ties. Returns 0 when
// either side is constant (no trend), which callers treat as "no sign".
double spearman(std::span<const double> x, std::span<const double> y);

// Runs body(k) for k in [0, n) on up to `workers` threads (0 = hardware
// concurrency). Results must be written to per-k slots so the outcome does
// not depend on scheduling.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace nursesim

#endif

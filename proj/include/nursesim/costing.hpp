#ifndef NURSESIM_COSTING_HPP
#define NURSESIM_COSTING_HPP

#include <cstdint>
#include <vector>

#include "nursesim/params.hpp"
#include "nursesim/policies.hpp"
#include "nursesim/state.hpp"
#include "nursesim/stats.hpp"

namespace nursesim {

// h(r, a) = r^a for a needy patient with r >= 1 stages left. Content
// patients cost nothing. Throws std::invalid_argument for r < 1.
double holding_cost(int r, double a);

// Sum_i Sum_r r^a * needy[i][r] on a post-arrival snapshot.
double period_cost(const SystemState& state, double a);

// Statistics of one replication over periods t > warmup.
struct RunStats {
    std::uint64_t seed = 0;
    double a = 0.0;
    std::int64_t periods_counted = 0;

    // needy_periods[r-1]: Sum over counted periods and nurses of X_{r,i,ns}(t).
    // Every cost and queue statistic below is a function of this vector.
    std::vector<std::int64_t> needy_periods;

    double total_cost = 0.0;      // at exponent `a`
    double avg_queue_all = 0.0;   // time-average needy headcount
    double avg_queue_hi = 0.0;    // same, restricted to r in {R-1, R}

    std::int64_t admissions = 0;  // whole horizon, warm-up included
    std::int64_t discharges = 0;
    std::int64_t in_system_end = 0;
    std::uint64_t arrival_hash = 0;  // FNV-1a over (t, type, nurse) of every arrival

    // Cost of the same sample path under a different exponent. Exact for
    // policies that do not look at `a` (both priority rules with a single
    // nurse or random assignment).
    double cost_at(double exponent) const;
    double avg_queue(int r) const;
    std::int64_t needy_headcount_periods() const;
};

// Fills the derived fields from needy_periods.
void finalize(RunStats& stats);

// Runs n_reps replications with seeds base_seed + k, k = 0..n_reps-1. The
// result is indexed by k regardless of the order in which workers finish.
std::vector<RunStats> run_replications(const SystemParams& params, const PolicySpec& policy,
                                       int n_reps, std::uint64_t base_seed, unsigned workers = 0);

// Mean and standard error of total_cost over n_reps replications.
Estimate estimate_J(const SystemParams& params, const PolicySpec& policy, int n_reps,
                    std::uint64_t base_seed, unsigned workers = 0);

std::vector<double> total_costs(const std::vector<RunStats>& reps);
std::vector<double> costs_at(const std::vector<RunStats>& reps, double a);

}  // namespace nursesim

#endif

#include "nursesim/costing.hpp"

#include <cmath>
#include <stdexcept>

#include "nursesim/dynamics.hpp"

namespace nursesim {

double holding_cost(int r, double a) {
    if (r < 1) throw std::invalid_argument("holding_cost: stage count must be >= 1");
    if (a == 0.0) return 1.0;
    if (a == 1.0) return static_cast<double>(r);
    return std::pow(static_cast<double>(r), a);
}

double period_cost(const SystemState& state, double a) {
    double c = 0.0;
    for (int i = 0; i < state.nurses(); ++i)
        for (int r = 1; r <= state.stages(); ++r) {
            const auto n = state.needy(i, r);
            if (n != 0) c += holding_cost(r, a) * static_cast<double>(n);
        }
    return c;
}

double RunStats::cost_at(double exponent) const {
    double c = 0.0;
    for (std::size_t k = 0; k < needy_periods.size(); ++k)
        c += holding_cost(static_cast<int>(k + 1), exponent) * static_cast<double>(needy_periods[k]);
    return c;
}

double RunStats::avg_queue(int r) const {
    if (periods_counted == 0) return 0.0;
    return static_cast<double>(needy_periods[static_cast<std::size_t>(r - 1)]) /
           static_cast<double>(periods_counted);
}

std::int64_t RunStats::needy_headcount_periods() const {
    std::int64_t n = 0;
    for (auto x : needy_periods) n += x;
    return n;
}

void finalize(RunStats& s) {
    s.total_cost = s.cost_at(s.a);
    const int stages = static_cast<int>(s.needy_periods.size());
    if (s.periods_counted == 0) {
        s.avg_queue_all = s.avg_queue_hi = 0.0;
        return;
    }
    const double periods = static_cast<double>(s.periods_counted);
    s.avg_queue_all = static_cast<double>(s.needy_headcount_periods()) / periods;
    std::int64_t hi = 0;
    for (int r = std::max(1, stages - 1); r <= stages; ++r) hi += s.needy_periods[static_cast<std::size_t>(r - 1)];
    s.avg_queue_hi = static_cast<double>(hi) / periods;
}

std::vector<RunStats> run_replications(const SystemParams& params, const PolicySpec& policy,
                                       int n_reps, std::uint64_t base_seed, unsigned workers) {
    if (n_reps < 1) throw std::invalid_argument("need at least one replication");
    std::vector<RunStats> out(static_cast<std::size_t>(n_reps));
    parallel_for(out.size(), workers, [&](std::size_t k) {
        out[k] = run_replication(params, policy, base_seed + k);
    });
    return out;
}

Estimate estimate_J(const SystemParams& params, const PolicySpec& policy, int n_reps,
                    std::uint64_t base_seed, unsigned workers) {
    const auto reps = run_replications(params, policy, n_reps, base_seed, workers);
    const auto totals = total_costs(reps);
    return estimate(totals);
}

std::vector<double> total_costs(const std::vector<RunStats>& reps) {
    std::vector<double> v;
    v.reserve(reps.size());
    for (const auto& s : reps) v.push_back(s.total_cost);
    return v;
}

std::vector<double> costs_at(const std::vector<RunStats>& reps, double a) {
    std::vector<double> v;
    v.reserve(reps.size());
    for (const auto& s : reps) v.push_back(s.cost_at(a));
    return v;
}

}  // namespace nursesim

#ifndef NURSESIM_EXPERIMENTS_HPP
#define NURSESIM_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nursesim/costing.hpp"
#include "nursesim/params.hpp"
#include "nursesim/policies.hpp"

namespace nursesim {

enum class SweptParam { a, alpha, beta, gamma };

const char* to_string(SweptParam p);
SweptParam swept_param_from_string(const std::string& name);

// Copy of `base` with the swept field set to `value`; validated.
SystemParams with_param(const SystemParams& base, SweptParam param, double value);

// Inclusive grid lo, lo+step, ..., hi (the end point is kept when it is
// within step/1000 of the last increment).
std::vector<double> make_grid(double lo, double hi, double step);

struct SweepSpec {
    SweptParam param = SweptParam::alpha;
    std::vector<double> grid;
    SystemParams base;
    int n_reps = 20;
    std::uint64_t base_seed = 1;
    unsigned workers = 0;
    // assignment_sweep only; default picks shortest_first for a < 0.5 and
    // longest_first otherwise (a = 0 and a = 1 are the studied cases).
    std::optional<Priority> priority;

    // Throws std::invalid_argument on an empty grid or illegal values.
    void validate() const;
};

struct PolicyEstimate {
    std::string policy;
    Estimate J;
    // Relative cost reduction against the row's baseline, (J_base - J)/J_base,
    // with a standard error from paired replication differences. Undefined
    // (nullopt) for the baseline itself and when J_base == 0.
    std::optional<double> improvement;
    double improvement_se = 0.0;
};

struct SweepRow {
    double value = 0.0;
    std::vector<PolicyEstimate> policies;
    bool degenerate = false;  // baseline cost is zero, improvements undefined

    const PolicyEstimate& get(const std::string& policy) const;
};

// Improvement of `cand` over `base` from paired per-replication costs.
PolicyEstimate paired_improvement(const std::string& name, const std::vector<double>& cand,
                                  const std::vector<double>& base);

struct ThresholdRow {
    double a = 0.0;
    Estimate shortest;
    Estimate longest;
};

struct ThresholdResult {
    std::vector<ThresholdRow> rows;
    // Linear interpolation of the first sign change of J_shortest - J_longest.
    std::optional<double> a_hat;
    std::optional<std::pair<double, double>> bracket;
};

// Both priority rules with a single assignment stream. Each rule is simulated
// once per replication and its cost at every grid exponent is read off the
// same sample path, so the curve shares one seed set.
ThresholdResult priority_threshold(const SystemParams& base, const std::vector<double>& a_grid,
                                   int n_reps, std::uint64_t base_seed, unsigned workers = 0);

// Shortest-first vs longest-first, one nurse; improvement of shortest over
// longest. `spec.base.a()` is the fixed exponent.
std::vector<SweepRow> priority_sweep(const SweepSpec& spec);

// h1, h2 and random assignment; improvements over random. The priority rule
// is fixed per spec.priority (see SweepSpec).
std::vector<SweepRow> assignment_sweep(const SweepSpec& spec);

struct TradeoffPoint {
    double alpha = 0, beta = 0, gamma = 0, a = 0;
    Priority rule = Priority::shortest_first;
    Estimate queue_all;
    Estimate queue_hi;
};

struct TradeoffGrid {
    std::vector<double> alphas = {0.05, 0.10, 0.15, 0.20, 0.25};
    std::vector<double> betas = {0.8, 0.9, 1.0};
    std::vector<double> gammas = {0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> a_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
};

// For every (alpha, beta, gamma) and a, the cheaper of the two priority rules
// at that a, and its queue statistics. Points are ordered alpha, beta, gamma, a.
std::vector<TradeoffPoint> tradeoff_curve(const SystemParams& base, const TradeoffGrid& grid,
                                          int n_reps, std::uint64_t base_seed, unsigned workers = 0);

}  // namespace nursesim

#endif

#include "nursesim/experiments.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "nursesim/dynamics.hpp"
#include "nursesim/stats.hpp"

namespace nursesim {

const char* to_string(SweptParam p) {
    switch (p) {
        case SweptParam::a: return "a";
        case SweptParam::alpha: return "alpha";
        case SweptParam::beta: return "beta";
        case SweptParam::gamma: return "gamma";
    }
    return "?";
}

SweptParam swept_param_from_string(const std::string& name) {
    if (name == "a") return SweptParam::a;
    if (name == "alpha") return SweptParam::alpha;
    if (name == "beta") return SweptParam::beta;
    if (name == "gamma") return SweptParam::gamma;
    throw std::invalid_argument("unknown swept parameter '" + name + "'");
}

SystemParams with_param(const SystemParams& base, SweptParam param, double value) {
    RawParams r = base.raw();
    switch (param) {
        case SweptParam::a: r.a = value; break;
        case SweptParam::alpha: r.alpha = value; break;
        case SweptParam::beta: r.beta = value; break;
        case SweptParam::gamma: r.gamma = value; break;
    }
    return SystemParams::validate(r);
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
    if (hi < lo) throw std::invalid_argument("grid end must be >= grid start");
    std::vector<double> g;
    for (long k = 0;; ++k) {
        const double v = lo + static_cast<double>(k) * step;
        if (v > hi + step * 1e-3) break;
        // snap values like 0.30000000000000004 so grids print cleanly
        g.push_back(std::round(v * 1e12) / 1e12);
    }
    return g;
}

void SweepSpec::validate() const {
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    if (n_reps < 1) throw std::invalid_argument("sweep needs at least one replication");
    for (double v : grid) with_param(base, param, v);
}

const PolicyEstimate& SweepRow::get(const std::string& policy) const {
    for (const auto& p : policies)
        if (p.policy == policy) return p;
    throw std::out_of_range("no policy '" + policy + "' in sweep row");
}

PolicyEstimate paired_improvement(const std::string& name, const std::vector<double>& cand,
                                  const std::vector<double>& base) {
    if (cand.size() != base.size()) throw std::invalid_argument("paired_improvement: size mismatch");
    PolicyEstimate out;
    out.policy = name;
    out.J = estimate(cand);
    const Estimate b = estimate(base);
    if (b.mean <= 0.0) return out;
    const double ratio = (b.mean - out.J.mean) / b.mean;
    out.improvement = ratio;
    // delta method for mean(base - cand) / mean(base)
    std::vector<double> resid(cand.size());
    for (std::size_t k = 0; k < cand.size(); ++k) resid[k] = (base[k] - cand[k]) - ratio * base[k];
    out.improvement_se = estimate(resid).se / b.mean;
    return out;
}

namespace {

struct Cell {
    SystemParams params;
    PolicySpec policy;
};

// Runs every cell with n_reps replications (seeds base_seed + k, shared by
// all cells) as one flat task list; result[c][k].
std::vector<std::vector<RunStats>> run_cells(const std::vector<Cell>& cells, int n_reps,
                                             std::uint64_t base_seed, unsigned workers) {
    const auto reps = static_cast<std::size_t>(n_reps);
    std::vector<std::vector<RunStats>> out(cells.size(), std::vector<RunStats>(reps));
    parallel_for(cells.size() * reps, workers, [&](std::size_t task) {
        const std::size_t c = task / reps;
        const std::size_t k = task % reps;
        out[c][k] = run_replication(cells[c].params, cells[c].policy, base_seed + k);
    });
    return out;
}

}  // namespace

ThresholdResult priority_threshold(const SystemParams& base, const std::vector<double>& a_grid,
                                   int n_reps, std::uint64_t base_seed, unsigned workers) {
    if (a_grid.empty()) throw std::invalid_argument("threshold: empty a grid");
    const std::vector<Cell> cells = {
        {base, {Priority::shortest_first, Assignment::random}},
        {base, {Priority::longest_first, Assignment::random}},
    };
    const auto runs = run_cells(cells, n_reps, base_seed, workers);

    ThresholdResult res;
    std::vector<double> diff;
    for (double a : a_grid) {
        ThresholdRow row;
        row.a = a;
        row.shortest = estimate(costs_at(runs[0], a));
        row.longest = estimate(costs_at(runs[1], a));
        diff.push_back(row.shortest.mean - row.longest.mean);
        res.rows.push_back(row);
    }
    for (std::size_t k = 0; k + 1 < diff.size(); ++k) {
        const double d0 = diff[k], d1 = diff[k + 1];
        const bool crosses = (d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0) || (d0 != 0.0 && d1 == 0.0);
        if (!crosses) continue;
        const double a0 = a_grid[k], a1 = a_grid[k + 1];
        res.a_hat = a0 + (a1 - a0) * d0 / (d0 - d1);
        res.bracket = std::make_pair(a0, a1);
        break;
    }
    return res;
}

std::vector<SweepRow> priority_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<Cell> cells;
    for (double v : spec.grid) {
        const SystemParams p = with_param(spec.base, spec.param, v);
        cells.push_back({p, {Priority::shortest_first, Assignment::random}});
        cells.push_back({p, {Priority::longest_first, Assignment::random}});
    }
    const auto runs = run_cells(cells, spec.n_reps, spec.base_seed, spec.workers);

    std::vector<SweepRow> rows;
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        SweepRow row;
        row.value = spec.grid[g];
        const auto shortest = total_costs(runs[2 * g]);
        const auto longest = total_costs(runs[2 * g + 1]);
        row.policies.push_back(paired_improvement(to_string(Priority::shortest_first), shortest, longest));
        PolicyEstimate base;
        base.policy = to_string(Priority::longest_first);
        base.J = estimate(longest);
        row.policies.push_back(base);
        row.degenerate = base.J.mean <= 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> assignment_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::array<Assignment, 3> rules = {Assignment::h1, Assignment::h2, Assignment::random};
    std::vector<Cell> cells;
    for (double v : spec.grid) {
        const SystemParams p = with_param(spec.base, spec.param, v);
        const Priority prio = spec.priority.value_or(p.a() < 0.5 ? Priority::shortest_first : Priority::longest_first);
        for (Assignment rule : rules) cells.push_back({p, {prio, rule}});
    }
    const auto runs = run_cells(cells, spec.n_reps, spec.base_seed, spec.workers);

    std::vector<SweepRow> rows;
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        SweepRow row;
        row.value = spec.grid[g];
        const auto random = total_costs(runs[3 * g + 2]);
        row.policies.push_back(paired_improvement("h1", total_costs(runs[3 * g]), random));
        row.policies.push_back(paired_improvement("h2", total_costs(runs[3 * g + 1]), random));
        PolicyEstimate base;
        base.policy = "random";
        base.J = estimate(random);
        row.policies.push_back(base);
        row.degenerate = base.J.mean <= 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<TradeoffPoint> tradeoff_curve(const SystemParams& base, const TradeoffGrid& grid,
                                          int n_reps, std::uint64_t base_seed, unsigned workers) {
    if (grid.a_grid.empty()) throw std::invalid_argument("tradeoff: empty a grid");
    struct Set { double alpha, beta, gamma; };
    std::vector<Set> sets;
    std::vector<Cell> cells;
    for (double alpha : grid.alphas)
        for (double beta : grid.betas)
            for (double gamma : grid.gammas) {
                RawParams r = base.raw();
                r.alpha = alpha;
                r.beta = beta;
                r.gamma = gamma;
                const SystemParams p = SystemParams::validate(r);
                sets.push_back({alpha, beta, gamma});
                cells.push_back({p, {Priority::shortest_first, Assignment::random}});
                cells.push_back({p, {Priority::longest_first, Assignment::random}});
            }
    const auto runs = run_cells(cells, n_reps, base_seed, workers);

    auto queue_stat = [](const std::vector<RunStats>& reps, bool hi) {
        std::vector<double> v;
        for (const auto& s : reps) v.push_back(hi ? s.avg_queue_hi : s.avg_queue_all);
        return estimate(v);
    };

    std::vector<TradeoffPoint> points;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& sf = runs[2 * s];
        const auto& lf = runs[2 * s + 1];
        for (double a : grid.a_grid) {
            const double j_sf = estimate(costs_at(sf, a)).mean;
            const double j_lf = estimate(costs_at(lf, a)).mean;
            const bool pick_sf = j_sf <= j_lf;
            const auto& chosen = pick_sf ? sf : lf;
            TradeoffPoint pt;
            pt.alpha = sets[s].alpha;
            pt.beta = sets[s].beta;
            pt.gamma = sets[s].gamma;
            pt.a = a;
            pt.rule = pick_sf ? Priority::shortest_first : Priority::longest_first;
            pt.queue_all = queue_stat(chosen, false);
            pt.queue_hi = queue_stat(chosen, true);
            points.push_back(pt);
        }
    }
    return points;
}

}  // namespace nursesim

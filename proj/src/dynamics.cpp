#include "nursesim/dynamics.hpp"

#include <stdexcept>

namespace nursesim {

namespace {

// Arrival type for period t, or nullopt when no patient arrives.
std::optional<int> draw_arrival(const SystemParams& params, const RandomStreams& rng, std::uint64_t t) {
    if (!(rng.uniform(Stream::arrival_occurrence, t) < params.alpha())) return std::nullopt;
    const double u = rng.uniform(Stream::arrival_type, t);
    double cumulative = 0.0;
    int last_positive = 0;
    for (int r = 1; r <= params.stages(); ++r) {
        if (params.theta(r) <= 0.0) continue;
        cumulative += params.theta(r);
        last_positive = r;
        if (u < cumulative) return r;
    }
    // as_is mode: the unprinted mass means nobody arrives.
    if (params.theta_mode() == ThetaMode::as_is) return std::nullopt;
    return last_positive;  // rounding slack of a normalized vector
}

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xFFu;
        h *= 0x100000001b3ull;
    }
}

}  // namespace

PeriodTrace step(SystemState& state, const SystemParams& params, const PolicySpec& policy,
                 const RandomStreams& rng) {
    const int nurses = state.nurses();
    const int stages = state.stages();
    const auto t = static_cast<std::uint64_t>(state.t());

    PeriodTrace trace;
    trace.t = state.t();
    trace.service_choice.assign(static_cast<std::size_t>(nurses), 0);
    trace.served.assign(static_cast<std::size_t>(nurses), 0);

    // (1) arrival, (2) assignment
    trace.arrival = draw_arrival(params, rng, t);
    if (trace.arrival) {
        const int nurse = assign(state, params, policy.assignment, rng, t);
        state.admit(nurse, *trace.arrival);
        trace.assignment = nurse + 1;
    }

    trace.needy_snapshot.assign(static_cast<std::size_t>(stages), 0);
    for (int i = 0; i < nurses; ++i) {
        const auto row = state.needy_row(i);
        for (int r = 1; r <= stages; ++r) trace.needy_snapshot[static_cast<std::size_t>(r - 1)] += row[static_cast<std::size_t>(r - 1)];
    }

    // (3) service selection; an in-progress service simply continues
    for (int i = 0; i < nurses; ++i) {
        const auto& current = state.in_service(i);
        if (!current) {
            const int r = select_service(state.needy_row(i), policy.priority);
            if (r == 0) continue;
            state.start_service(i, r);
        }
        trace.service_choice[static_cast<std::size_t>(i)] = state.in_service(i)->remaining;
        trace.served[static_cast<std::size_t>(i)] = state.in_service(i)->id;
    }

    // (4) end of period: completions first, then content transitions of
    // patients that were already content at the start of the period
    std::vector<std::pair<int, Patient>> entering_content;
    for (int i = 0; i < nurses; ++i) {
        auto& nq = state.queues(i);
        if (!nq.in_service) continue;
        Patient& p = *nq.in_service;
        const bool done = rng.uniform(Stream::service_completion, p.id,
                                      static_cast<std::uint32_t>(p.remaining), p.elapsed) < params.beta();
        ++p.elapsed;
        if (!done) continue;
        const Patient finished = state.finish_service(i);
        const bool discharged = finished.remaining == 1;
        trace.completions.push_back({i, finished.remaining, finished.id, discharged});
        if (discharged)
            state.record_discharge();
        else
            entering_content.emplace_back(i, Patient{finished.id, finished.remaining - 1, 0});
    }
    for (int i = 0; i < nurses; ++i) {
        state.release_content(i, [&](Patient& p) {
            const bool back = rng.uniform(Stream::content_transition, p.id,
                                          static_cast<std::uint32_t>(p.remaining), p.elapsed) < params.gamma();
            ++p.elapsed;
            if (back) trace.returns.push_back({i, p.remaining, p.id});
            return back;
        });
    }
    for (const auto& [i, p] : entering_content) state.add_content(i, p);

    // (5)
    state.advance_clock();
    return trace;
}

RunStats run_replication(const SystemParams& params, const PolicySpec& policy, std::uint64_t seed,
                         bool audit) {
    const RandomStreams rng(seed);
    SystemState state(params);
    RunStats stats;
    stats.seed = seed;
    stats.a = params.a();
    stats.needy_periods.assign(static_cast<std::size_t>(params.stages()), 0);
    stats.arrival_hash = 0xcbf29ce484222325ull;

    for (int t = 1; t <= params.periods(); ++t) {
        const PeriodTrace trace = step(state, params, policy, rng);
        if (trace.arrival) {
            fnv_mix(stats.arrival_hash, static_cast<std::uint64_t>(t));
            fnv_mix(stats.arrival_hash, static_cast<std::uint64_t>(*trace.arrival));
            fnv_mix(stats.arrival_hash, static_cast<std::uint64_t>(trace.assignment));
        }
        if (t > params.warmup()) {
            for (std::size_t k = 0; k < trace.needy_snapshot.size(); ++k)
                stats.needy_periods[k] += trace.needy_snapshot[k];
            ++stats.periods_counted;
        }
        if (audit) state.audit();
    }
    stats.admissions = state.admitted();
    stats.discharges = state.discharged();
    stats.in_system_end = state.in_system();
    finalize(stats);
    return stats;
}

}  // namespace nursesim

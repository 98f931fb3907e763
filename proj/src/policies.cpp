#include "nursesim/policies.hpp"

#include <algorithm>
#include <stdexcept>

#include "nursesim/costing.hpp"

namespace nursesim {

const char* to_string(Priority p) {
    return p == Priority::shortest_first ? "shortest_first" : "longest_first";
}

const char* to_string(Assignment a) {
    switch (a) {
        case Assignment::h1: return "h1";
        case Assignment::h2: return "h2";
        case Assignment::random: return "random";
    }
    return "?";
}

Priority priority_from_string(const std::string& name) {
    if (name == "shortest_first" || name == "shortest") return Priority::shortest_first;
    if (name == "longest_first" || name == "longest") return Priority::longest_first;
    throw std::invalid_argument("unknown priority rule '" + name + "'");
}

Assignment assignment_from_string(const std::string& name) {
    if (name == "h1") return Assignment::h1;
    if (name == "h2") return Assignment::h2;
    if (name == "random") return Assignment::random;
    throw std::invalid_argument("unknown assignment rule '" + name + "'");
}

int select_service(std::span<const std::int64_t> needy_row, Priority priority) {
    const int n = static_cast<int>(needy_row.size());
    if (priority == Priority::shortest_first) {
        for (int r = 1; r <= n; ++r)
            if (needy_row[static_cast<std::size_t>(r - 1)] > 0) return r;
    } else {
        for (int r = n; r >= 1; --r)
            if (needy_row[static_cast<std::size_t>(r - 1)] > 0) return r;
    }
    return 0;
}

double score_h1(const SystemState& state, int nurse, double a) {
    double s = 0.0;
    for (int r = 1; r <= state.stages(); ++r) {
        const auto n = state.needy(nurse, r);
        if (n != 0) s += holding_cost(r, a) * static_cast<double>(n);
    }
    return s;
}

double score_h2(const SystemState& state, int nurse, double a) {
    double s = 0.0;
    double cumulative = 0.0;
    for (int r = 1; r <= state.stages(); ++r) {
        cumulative += holding_cost(r, a);
        const auto n = state.needy(nurse, r) + state.content(nurse, r);
        if (n != 0) s += static_cast<double>(n) * cumulative;
    }
    return s;
}

AssignmentScore score_nurses(const SystemState& state, Assignment rule, double a) {
    AssignmentScore out;
    out.rule = rule;
    out.score.assign(static_cast<std::size_t>(state.nurses()), 0.0);
    if (rule == Assignment::random) return out;
    for (int i = 0; i < state.nurses(); ++i)
        out.score[static_cast<std::size_t>(i)] =
            rule == Assignment::h1 ? score_h1(state, i, a) : score_h2(state, i, a);
    return out;
}

int assign(const SystemState& state, const SystemParams& params, Assignment rule,
           const RandomStreams& rng, std::uint64_t t) {
    const int nurses = state.nurses();
    if (nurses == 1) return 0;
    if (rule == Assignment::random)
        return static_cast<int>(rng.below(static_cast<std::uint32_t>(nurses), Stream::tie_break, t));

    const AssignmentScore sc = score_nurses(state, rule, params.a());
    double best = sc.score[0];
    for (double s : sc.score) best = std::min(best, s);
    std::vector<int> tied;
    for (int i = 0; i < nurses; ++i)
        if (sc.score[static_cast<std::size_t>(i)] == best) tied.push_back(i);
    if (tied.size() == 1) return tied.front();
    return tied[rng.below(static_cast<std::uint32_t>(tied.size()), Stream::tie_break, t)];
}

}  // namespace nursesim

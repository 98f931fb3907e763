#ifndef NURSESIM_DYNAMICS_HPP
#define NURSESIM_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nursesim/costing.hpp"
#include "nursesim/params.hpp"
#include "nursesim/policies.hpp"
#include "nursesim/random_streams.hpp"
#include "nursesim/state.hpp"

namespace nursesim {

struct Completion {
    int nurse = 0;  // 0-based
    int stage = 0;  // stages left when the service finished
    PatientId patient = 0;
    bool discharged = false;
};

struct ContentReturn {
    int nurse = 0;  // 0-based
    int stage = 0;
    PatientId patient = 0;
};

// What happened in one period.
struct PeriodTrace {
    int t = 0;
    std::optional<int> arrival;       // type Z_t
    int assignment = 0;               // A_t: 0 = no arrival, else nurse number 1..I
    std::vector<int> service_choice;  // Y_t: stage served by each nurse, 0 = idle
    std::vector<PatientId> served;    // patient served by each nurse (valid when Y > 0)
    std::vector<Completion> completions;
    std::vector<ContentReturn> returns;
    // needy_snapshot[r-1]: Sum_i X_{r,i,ns}(t), taken right after the arrival
    // was placed and before any service is resolved.
    std::vector<std::int64_t> needy_snapshot;
};

// Advances one period: arrival, assignment, service selection, then
// end-of-period completions followed by content-to-needy transitions.
// A patient that enters content this period draws its first return coin next
// period; a patient returning to needy is eligible for service next period.
PeriodTrace step(SystemState& state, const SystemParams& params, const PolicySpec& policy,
                 const RandomStreams& rng);

#ifdef NDEBUG
inline constexpr bool kAuditByDefault = false;
#else
inline constexpr bool kAuditByDefault = true;
#endif

// Periods 1..T from an empty system. With `audit`, every state invariant
// (including admissions = discharges + in-system) is rechecked each period.
RunStats run_replication(const SystemParams& params, const PolicySpec& policy, std::uint64_t seed,
                         bool audit = kAuditByDefault);

}  // namespace nursesim

#endif

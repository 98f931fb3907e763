#ifndef NURSESIM_CLEARING_HPP
#define NURSESIM_CLEARING_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace nursesim {

// Two-patient clearing system with deterministic durations.
//
// Patient 1 needs `i` nurse visits, patient 2 needs `j >= i`. Both start
// needy at time 0 and nobody else arrives. Visit l (1-based) of either
// patient takes needy_durations[l-1] periods of service and, unless it was
// the patient's last visit, is followed by content_durations[l-1] periods in
// bed. Sharing the vectors between patients and systems is what makes the
// equal-service-time assumption hold by construction.
struct ClearingInstance {
    int i = 1;
    int j = 1;
    std::vector<int> needy_durations;    // size j
    std::vector<int> content_durations;  // size j - 1

    // All durations equal to 1.
    static ClearingInstance unit(int i, int j);
    // Throws std::invalid_argument when malformed.
    void validate() const;
};

// Departures, waits and occupancy of one system (one priority order).
// Index [p] is patient 0 (type i) or 1 (type j); visit vectors are 0-based.
struct ClearingSystem {
    std::array<std::vector<int>, 2> needy_entry;      // time the patient joins the nurse queue
    std::array<std::vector<int>, 2> needy_departure;  // D_{m,p,ns,l}
    std::array<std::vector<int>, 2> content_departure;  // D_{m,p,cs,l}, one fewer than visits
    std::array<std::vector<int>, 2> waiting;          // W_{m,p,ns,l} = departure - entry - service
    // needy_periods_by_stage[r-1]: periods some needy patient with r stages
    // left was present, summed over both patients.
    std::vector<std::int64_t> needy_periods_by_stage;
    int makespan = 0;  // period at whose end the last patient is discharged

    // Per-period needy holding cost summed over the trajectory.
    double cost(double a) const;
    // Sum_{p,l} (stages left at visit l)^a * W_{p,l}.
    double waiting_form_cost(double a) const;
    // Sum_{p,l} (stages left at visit l)^a * S_l; identical across systems.
    double service_form_cost(double a) const;
};

struct ClearingResult {
    ClearingInstance instance;
    // [0] = s1, serves patient 1 (shortest) first; [1] = s2, serves patient 2 first.
    std::array<ClearingSystem, 2> system;

    std::array<double, 2> costs(double a) const { return {system[0].cost(a), system[1].cost(a)}; }
};

ClearingResult simulate_clearing(const ClearingInstance& inst);

struct Lemma2Report {
    bool shorter_chain = false;   // D_{1,1,ns,i} <= D_{2,1,ns,i} <= D_{1,2,ns,j}
    bool longer_chain = false;    // D_{1,1,ns,i} <= D_{2,2,ns,j} <= D_{1,2,ns,j}
    bool needy_lead = false;      // D_{1,1,ns,l} <= D_{1,2,ns,l}, l <= i
    bool content_lead = false;    // D_{1,1,cs,l} <= D_{1,2,cs,l}, l < i
    bool passed() const { return shorter_chain && longer_chain && needy_lead && content_lead; }
};

Lemma2Report check_lemma2(const ClearingResult& result);
Lemma2Report check_lemma2(const ClearingInstance& inst);

struct ClearingCosts {
    double c1 = 0.0;  // per-period accounting, s1
    double c2 = 0.0;  // per-period accounting, s2
    double waiting_form_c1 = 0.0;
    double waiting_form_c2 = 0.0;
    // |(c2 - c1) - (W2 - W1)| within 1e-9 relative to max(1, |c2 - c1|)
    bool forms_agree = false;
    double diff() const { return c2 - c1; }
    double waiting_form_diff() const { return waiting_form_c2 - waiting_form_c1; }
};

ClearingCosts clearing_costs(const ClearingResult& result, double a);
ClearingCosts clearing_costs(const ClearingInstance& inst, double a);

// Exponent in [0, 1] where c2(a) - c1(a) changes sign, by bisection to
// `tolerance`. 0 when i == j or c2 <= c1 already at a = 0; 1 when c2 >= c1
// at a = 1. Throws std::invalid_argument for tolerance <= 0.
double clearing_threshold(const ClearingInstance& inst, double tolerance);
double clearing_threshold(const ClearingResult& result, double tolerance);

// Calls visit(inst) for every 1 <= i <= j <= max_type and every assignment
// of `values` to the j needy and j-1 content durations.
void for_each_clearing_instance(int max_type, const std::vector<int>& values,
                                const std::function<void(const ClearingInstance&)>& visit);

}  // namespace nursesim

#endif

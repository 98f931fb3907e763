#include "nursesim/clearing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nursesim/costing.hpp"

namespace nursesim {

ClearingInstance ClearingInstance::unit(int i, int j) {
    ClearingInstance inst;
    inst.i = i;
    inst.j = j;
    inst.needy_durations.assign(static_cast<std::size_t>(std::max(j, 0)), 1);
    inst.content_durations.assign(static_cast<std::size_t>(std::max(j - 1, 0)), 1);
    return inst;
}

void ClearingInstance::validate() const {
    if (i < 1) throw std::invalid_argument("clearing: i must be >= 1");
    if (j < i) throw std::invalid_argument("clearing: j must be >= i");
    if (needy_durations.size() != static_cast<std::size_t>(j))
        throw std::invalid_argument("clearing: need exactly j needy durations");
    if (content_durations.size() != static_cast<std::size_t>(j - 1))
        throw std::invalid_argument("clearing: need exactly j-1 content durations");
    for (int d : needy_durations)
        if (d < 1) throw std::invalid_argument("clearing: durations must be >= 1 period");
    for (int d : content_durations)
        if (d < 1) throw std::invalid_argument("clearing: durations must be >= 1 period");
}

namespace {

enum class Phase { waiting, serving, content, done };

struct Track {
    int type = 0;
    int visit = 0;  // 0-based index of the current or next needy visit
    Phase phase = Phase::waiting;
    int timer = 0;
};

// first_served: 0 for s1 (patient 1 has priority), 1 for s2.
ClearingSystem run_system(const ClearingInstance& inst, int first_served) {
    ClearingSystem sys;
    std::array<Track, 2> pt = {Track{inst.i}, Track{inst.j}};
    for (int p = 0; p < 2; ++p) {
        const auto visits = static_cast<std::size_t>(pt[static_cast<std::size_t>(p)].type);
        sys.needy_entry[p].assign(visits, 0);
        sys.needy_departure[p].assign(visits, 0);
        sys.content_departure[p].assign(visits - 1, 0);
        sys.waiting[p].assign(visits, 0);
    }
    sys.needy_periods_by_stage.assign(static_cast<std::size_t>(inst.j), 0);
    const std::array<int, 2> order = {first_served, 1 - first_served};

    auto ns = [&](int l) { return inst.needy_durations[static_cast<std::size_t>(l)]; };
    auto cs = [&](int l) { return inst.content_durations[static_cast<std::size_t>(l)]; };

    for (int tau = 0; pt[0].phase != Phase::done || pt[1].phase != Phase::done; ++tau) {
        for (const Track& tr : pt)
            if (tr.phase == Phase::waiting || tr.phase == Phase::serving)
                ++sys.needy_periods_by_stage[static_cast<std::size_t>(tr.type - tr.visit - 1)];

        const bool busy = pt[0].phase == Phase::serving || pt[1].phase == Phase::serving;
        if (!busy) {
            for (int p : order) {
                Track& tr = pt[static_cast<std::size_t>(p)];
                if (tr.phase == Phase::waiting) {
                    tr.phase = Phase::serving;
                    tr.timer = ns(tr.visit);
                    break;
                }
            }
        }

        // End of period. Content stays that began earlier tick first; a
        // patient finishing service now starts its content stay next period.
        for (int p = 0; p < 2; ++p) {
            Track& tr = pt[static_cast<std::size_t>(p)];
            if (tr.phase != Phase::content) continue;
            if (--tr.timer == 0) {
                sys.content_departure[p][static_cast<std::size_t>(tr.visit)] = tau + 1;
                ++tr.visit;
                tr.phase = Phase::waiting;
                sys.needy_entry[p][static_cast<std::size_t>(tr.visit)] = tau + 1;
            }
        }
        for (int p = 0; p < 2; ++p) {
            Track& tr = pt[static_cast<std::size_t>(p)];
            if (tr.phase != Phase::serving) continue;
            if (--tr.timer > 0) continue;
            const auto l = static_cast<std::size_t>(tr.visit);
            sys.needy_departure[p][l] = tau + 1;
            sys.waiting[p][l] = tau + 1 - sys.needy_entry[p][l] - ns(tr.visit);
            if (tr.visit + 1 == tr.type) {
                tr.phase = Phase::done;
                sys.makespan = std::max(sys.makespan, tau + 1);
            } else {
                tr.phase = Phase::content;
                tr.timer = cs(tr.visit);
            }
        }
    }
    return sys;
}

template <class Weight>
double visit_weighted(const ClearingSystem& sys, double a, Weight weight) {
    double c = 0.0;
    for (int p = 0; p < 2; ++p) {
        const int type = static_cast<int>(sys.needy_departure[p].size());
        for (int l = 0; l < type; ++l) c += holding_cost(type - l, a) * weight(p, l);
    }
    return c;
}

}  // namespace

double ClearingSystem::cost(double a) const {
    double c = 0.0;
    for (std::size_t k = 0; k < needy_periods_by_stage.size(); ++k)
        if (needy_periods_by_stage[k] != 0)
            c += holding_cost(static_cast<int>(k + 1), a) * static_cast<double>(needy_periods_by_stage[k]);
    return c;
}

double ClearingSystem::waiting_form_cost(double a) const {
    return visit_weighted(*this, a, [&](int p, int l) {
        return static_cast<double>(waiting[p][static_cast<std::size_t>(l)]);
    });
}

double ClearingSystem::service_form_cost(double a) const {
    return visit_weighted(*this, a, [&](int p, int l) {
        const auto k = static_cast<std::size_t>(l);
        return static_cast<double>(needy_departure[p][k] - needy_entry[p][k] - waiting[p][k]);
    });
}

ClearingResult simulate_clearing(const ClearingInstance& inst) {
    inst.validate();
    ClearingResult res;
    res.instance = inst;
    res.system[0] = run_system(inst, 0);
    res.system[1] = run_system(inst, 1);
    return res;
}

Lemma2Report check_lemma2(const ClearingResult& res) {
    const auto& s1 = res.system[0];
    const auto& s2 = res.system[1];
    const int i = res.instance.i;
    const int j = res.instance.j;
    const auto li = static_cast<std::size_t>(i - 1);
    const auto lj = static_cast<std::size_t>(j - 1);
    const int d11 = s1.needy_departure[0][li];
    const int d12 = s1.needy_departure[1][lj];
    const int d21 = s2.needy_departure[0][li];
    const int d22 = s2.needy_departure[1][lj];

    Lemma2Report rep;
    rep.shorter_chain = d11 <= d21 && d21 <= d12;
    rep.longer_chain = d11 <= d22 && d22 <= d12;
    rep.needy_lead = true;
    rep.content_lead = true;
    for (int l = 0; l < i; ++l) {
        const auto k = static_cast<std::size_t>(l);
        if (s1.needy_departure[0][k] > s1.needy_departure[1][k]) rep.needy_lead = false;
        if (l < i - 1 && s1.content_departure[0][k] > s1.content_departure[1][k]) rep.content_lead = false;
    }
    return rep;
}

Lemma2Report check_lemma2(const ClearingInstance& inst) { return check_lemma2(simulate_clearing(inst)); }

ClearingCosts clearing_costs(const ClearingResult& res, double a) {
    ClearingCosts out;
    out.c1 = res.system[0].cost(a);
    out.c2 = res.system[1].cost(a);
    out.waiting_form_c1 = res.system[0].waiting_form_cost(a);
    out.waiting_form_c2 = res.system[1].waiting_form_cost(a);
    const double gap = std::abs(out.diff() - out.waiting_form_diff());
    out.forms_agree = gap <= 1e-9 * std::max(1.0, std::abs(out.diff()));
    return out;
}

ClearingCosts clearing_costs(const ClearingInstance& inst, double a) {
    return clearing_costs(simulate_clearing(inst), a);
}

double clearing_threshold(const ClearingResult& res, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("clearing_threshold: tolerance must be > 0");
    if (res.instance.i == res.instance.j) return 0.0;
    auto diff = [&](double a) { return res.system[1].cost(a) - res.system[0].cost(a); };
    if (diff(0.0) <= 0.0) return 0.0;
    if (diff(1.0) >= 0.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (diff(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double clearing_threshold(const ClearingInstance& inst, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("clearing_threshold: tolerance must be > 0");
    return clearing_threshold(simulate_clearing(inst), tolerance);
}

void for_each_clearing_instance(int max_type, const std::vector<int>& values,
                                const std::function<void(const ClearingInstance&)>& visit) {
    if (values.empty()) throw std::invalid_argument("duration value set is empty");
    const std::size_t base = values.size();
    for (int j = 1; j <= max_type; ++j) {
        const std::size_t slots = static_cast<std::size_t>(2 * j - 1);
        std::vector<std::size_t> digit(slots, 0);
        ClearingInstance inst;
        inst.j = j;
        inst.needy_durations.resize(static_cast<std::size_t>(j));
        inst.content_durations.resize(static_cast<std::size_t>(j - 1));
        for (;;) {
            for (std::size_t s = 0; s < slots; ++s) {
                const int v = values[digit[s]];
                if (s < static_cast<std::size_t>(j))
                    inst.needy_durations[s] = v;
                else
                    inst.content_durations[s - static_cast<std::size_t>(j)] = v;
            }
            for (int i = 1; i <= j; ++i) {
                inst.i = i;
                visit(inst);
            }
            std::size_t s = 0;
            while (s < slots && ++digit[s] == base) digit[s++] = 0;
            if (s == slots) break;
        }
    }
}

}  // namespace nursesim

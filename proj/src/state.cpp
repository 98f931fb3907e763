#include "nursesim/state.hpp"

#include <stdexcept>
#include <string>

namespace nursesim {

SystemState::SystemState(const SystemParams& params)
    : SystemState(params.nurses(), params.stages()) {}

SystemState::SystemState(int nurses, int stages) : stages_(stages) {
    if (nurses < 1 || stages < 1) throw std::invalid_argument("state needs I >= 1 and R >= 1");
    queues_.resize(static_cast<std::size_t>(nurses));
    for (auto& nq : queues_) {
        nq.waiting.resize(static_cast<std::size_t>(stages));
        nq.needy.assign(static_cast<std::size_t>(stages), 0);
        nq.content_count.assign(static_cast<std::size_t>(stages - 1), 0);
    }
}

std::int64_t SystemState::content(int nurse, int r) const {
    if (r >= stages_) return 0;
    return q(nurse).content_count[idx(r)];
}

PatientId SystemState::admit(int nurse, int type) {
    const PatientId id = static_cast<PatientId>(admitted_++);
    add_needy(nurse, Patient{id, type, 0});
    return id;
}

void SystemState::add_needy(int nurse, Patient p) {
    if (p.remaining < 1 || p.remaining > stages_)
        throw std::invalid_argument("needy patient stage out of range");
    NurseQueues& nq = queues(nurse);
    nq.waiting[idx(p.remaining)].push_back(p);
    ++nq.needy[idx(p.remaining)];
    ++needy_total_;
}

void SystemState::add_content(int nurse, Patient p) {
    if (p.remaining < 1 || p.remaining >= stages_)
        throw std::invalid_argument("content patient stage out of range");
    NurseQueues& nq = queues(nurse);
    nq.content.push_back(p);
    ++nq.content_count[idx(p.remaining)];
    ++content_total_;
}

const Patient& SystemState::start_service(int nurse, int r) {
    NurseQueues& nq = queues(nurse);
    if (nq.in_service) throw std::logic_error("nurse already serving (service is non-preemptive)");
    auto& line = nq.waiting[idx(r)];
    if (line.empty()) throw std::logic_error("no waiting patient with the selected stage");
    nq.in_service = line.front();
    nq.in_service->elapsed = 0;
    line.pop_front();
    return *nq.in_service;
}

Patient SystemState::finish_service(int nurse) {
    NurseQueues& nq = queues(nurse);
    if (!nq.in_service) throw std::logic_error("finish_service on an idle nurse");
    const Patient p = *nq.in_service;
    nq.in_service.reset();
    --nq.needy[idx(p.remaining)];
    --needy_total_;
    return p;
}

void SystemState::audit() const {
    auto fail = [](const std::string& what) { throw std::logic_error("state audit: " + what); };
    std::int64_t needy_sum = 0;
    std::int64_t content_sum = 0;
    for (const auto& nq : queues_) {
        for (int r = 1; r <= stages_; ++r) {
            std::int64_t count = static_cast<std::int64_t>(nq.waiting[idx(r)].size());
            if (nq.in_service && nq.in_service->remaining == r) ++count;
            if (nq.needy[idx(r)] != count) fail("needy count mismatch at stage " + std::to_string(r));
            if (nq.needy[idx(r)] < 0) fail("negative needy count");
            needy_sum += count;
        }
        std::vector<std::int64_t> seen(static_cast<std::size_t>(stages_), 0);
        for (const auto& p : nq.content) {
            if (p.remaining < 1 || p.remaining >= stages_) fail("content patient with stage R or 0");
            ++seen[idx(p.remaining)];
        }
        for (int r = 1; r < stages_; ++r) {
            if (nq.content_count[idx(r)] != seen[idx(r)]) fail("content count mismatch");
            content_sum += seen[idx(r)];
        }
        if (nq.in_service && nq.needy[idx(nq.in_service->remaining)] < 1)
            fail("in-service patient not counted as needy");
    }
    if (needy_sum != needy_total_ || content_sum != content_total_) fail("running totals drifted");
    if (admitted_ != discharged_ + needy_sum + content_sum) fail("patient conservation violated");
}

}  // namespace nursesim

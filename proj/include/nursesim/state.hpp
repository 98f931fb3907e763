#ifndef NURSESIM_STATE_HPP
#define NURSESIM_STATE_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "nursesim/params.hpp"

namespace nursesim {

using PatientId = std::uint64_t;

struct Patient {
    PatientId id = 0;
    int remaining = 0;          // stages left, counting the current one when needy
    std::uint32_t elapsed = 0;  // periods spent in the current needy service or content stay
};

// Everything assigned to one nurse.
struct NurseQueues {
    // waiting[r-1]: needy patients with r stages left that are not in service, FIFO.
    std::vector<std::deque<Patient>> waiting;
    std::optional<Patient> in_service;
    std::vector<Patient> content;

    // Counts as seen by the model: needy[r-1] includes the in-service patient.
    std::vector<std::int64_t> needy;
    // content_count[r-1] for r in 1..R-1.
    std::vector<std::int64_t> content_count;
};

// The mutable state of one replication. Nurses are indexed 0..I-1, stages 1..R.
class SystemState {
public:
    explicit SystemState(const SystemParams& params);
    SystemState(int nurses, int stages);

    int nurses() const { return static_cast<int>(queues_.size()); }
    int stages() const { return stages_; }

    // Current period, starting at 1.
    int t() const { return t_; }

    std::int64_t needy(int nurse, int r) const { return q(nurse).needy[idx(r)]; }
    // Zero for r = R: content patients have at most R-1 stages left.
    std::int64_t content(int nurse, int r) const;
    std::span<const std::int64_t> needy_row(int nurse) const { return q(nurse).needy; }
    std::span<const std::int64_t> content_row(int nurse) const { return q(nurse).content_count; }
    const std::optional<Patient>& in_service(int nurse) const { return q(nurse).in_service; }

    std::int64_t admitted() const { return admitted_; }
    std::int64_t discharged() const { return discharged_; }
    std::int64_t needy_total() const { return needy_total_; }
    std::int64_t content_total() const { return content_total_; }
    std::int64_t in_system() const { return needy_total_ + content_total_; }

    // Mutations used by the period dynamics and by tests that build states by hand.
    PatientId admit(int nurse, int type);
    void add_needy(int nurse, Patient p);
    void add_content(int nurse, Patient p);
    // Moves the front waiting patient with r stages into service. Nurse must be idle.
    const Patient& start_service(int nurse, int r);
    void advance_clock() { ++t_; }

    NurseQueues& queues(int nurse) { return queues_[static_cast<std::size_t>(nurse)]; }
    const NurseQueues& queues(int nurse) const { return q(nurse); }

    // Ends the in-service patient's current needy visit and returns it with
    // its stage count unchanged. The caller decides content vs discharge.
    Patient finish_service(int nurse);
    void record_discharge() { ++discharged_; }

    // Offers every content patient of `nurse` to `wants_return`, in arrival
    // order into the content state. Patients for which it returns true move
    // to the back of their needy waiting line. Returns how many moved.
    template <class F>
    int release_content(int nurse, F&& wants_return);

    // Full recount of every invariant; throws std::logic_error on violation.
    void audit() const;

private:
    const NurseQueues& q(int nurse) const { return queues_[static_cast<std::size_t>(nurse)]; }
    static std::size_t idx(int r) { return static_cast<std::size_t>(r - 1); }

    int stages_;
    int t_ = 1;
    std::vector<NurseQueues> queues_;
    std::int64_t admitted_ = 0;
    std::int64_t discharged_ = 0;
    std::int64_t needy_total_ = 0;
    std::int64_t content_total_ = 0;
};

template <class F>
int SystemState::release_content(int nurse, F&& wants_return) {
    NurseQueues& nq = queues(nurse);
    int moved = 0;
    std::size_t keep = 0;
    for (std::size_t k = 0; k < nq.content.size(); ++k) {
        Patient& p = nq.content[k];
        if (wants_return(p)) {
            --nq.content_count[idx(p.remaining)];
            --content_total_;
            add_needy(nurse, Patient{p.id, p.remaining, 0});
            ++moved;
        } else {
            nq.content[keep++] = p;
        }
    }
    nq.content.resize(keep);
    return moved;
}

}  // namespace nursesim

#endif

#ifndef NURSESIM_POLICIES_HPP
#define NURSESIM_POLICIES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nursesim/params.hpp"
#include "nursesim/random_streams.hpp"
#include "nursesim/state.hpp"

namespace nursesim {

enum class Priority { shortest_first, longest_first };
enum class Assignment { h1, h2, random };

struct PolicySpec {
    Priority priority = Priority::shortest_first;
    Assignment assignment = Assignment::random;
};

const char* to_string(Priority p);
const char* to_string(Assignment a);
Priority priority_from_string(const std::string& name);
Assignment assignment_from_string(const std::string& name);

// Stage to serve next from a needy count row (row[r-1] = count with r stages
// left). Returns 0 when the row is empty.
int select_service(std::span<const std::int64_t> needy_row, Priority priority);

// Sum_r r^a * needy[nurse][r]: the nurse's instantaneous holding cost.
double score_h1(const SystemState& state, int nurse, double a);

// Sum_r (needy + content)[nurse][r] * sum_{r'<=r} r'^a: holding cost of all
// remaining nurse visits, as if each were charged once.
double score_h2(const SystemState& state, int nurse, double a);

struct AssignmentScore {
    Assignment rule = Assignment::random;
    std::vector<double> score;  // per nurse; all zero for the random rule
};

// Scores are taken on the state before the arriving patient is placed.
AssignmentScore score_nurses(const SystemState& state, Assignment rule, double a);

// Nurse index in [0, I) for the arrival of period t. h1/h2 pick the lowest
// score with uniform tie-breaking; random picks uniformly over all nurses.
// Every draw comes from the tie-break stream keyed by t.
int assign(const SystemState& state, const SystemParams& params, Assignment rule,
           const RandomStreams& rng, std::uint64_t t);

}  // namespace nursesim

#endif

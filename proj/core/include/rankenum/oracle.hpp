#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankenum/automaton.hpp"
#include "rankenum/circuit.hpp"
#include "rankenum/ranking.hpp"
#include "rankenum/tree.hpp"

namespace rankenum {

struct RankedAnswer {
    double score;
    PartialAssignment assignment;
};

/// Scored total assignments, nonincreasing; ties ordered by assignment for
/// reproducibility.
using RankedAnswerList = std::vector<RankedAnswer>;

/// Ground truth by exhaustion: every total assignment is tested with
/// evaluate() and the survivors sorted by score (ties by assignment order).
/// Requires |D|^n <= guard.
RankedAnswerList brute_force_circuit(const Circuit& c, const RankingFunction& w,
                                     std::uint64_t guard = 1000000);

/// Ground truth for the automaton pipeline: every placement of the variables
/// on tree nodes is run through the automaton. Requires |T|^n <= guard.
RankedAnswerList brute_force_mso(const LabeledTree& t, const Bdta& a, const RankingFunction& w,
                                 std::uint64_t guard = 1000000);

struct RankedDivergence {
    std::string message;
};

/// Compares an enumeration against the oracle: same assignments, same scores,
/// actual scores nonincreasing. Order within tied-score blocks is free.
/// Returns the first divergence, or nullopt on agreement.
std::optional<RankedDivergence> ranked_equal(const RankedAnswerList& expected,
                                             const RankedAnswerList& actual);

}  // namespace rankenum

#include "rankenum/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace rankenum {

namespace {

void sort_ranked(RankedAnswerList& list) {
    std::sort(list.begin(), list.end(), [](const RankedAnswer& a, const RankedAnswer& b) {
        if (a.score != b.score) return a.score > b.score;
        return lexicographic_less(a.assignment, b.assignment);
    });
}

void check_guard(double space, std::uint64_t guard, const char* what) {
    if (space > static_cast<double>(guard))
        throw GuardError(std::string(what) + " exceeds the brute-force limit of " +
                         std::to_string(guard));
}

}  // namespace

RankedAnswerList brute_force_circuit(const Circuit& c, const RankingFunction& w,
                                     std::uint64_t guard) {
    check_guard(std::pow(static_cast<double>(c.domain().size()), c.vars().size()), guard,
                "assignment space |D|^n");
    RankedAnswerList out;
    std::vector<char> bits;
    detail::for_each_total_assignment(c.domain().size(), c.vars().size(),
                                      [&](const PartialAssignment& a) {
        evaluate_all(c, a, bits);
        if (bits[static_cast<std::size_t>(c.output())]) out.push_back(RankedAnswer{w(a), a});
    });
    sort_ranked(out);
    return out;
}

RankedAnswerList brute_force_mso(const LabeledTree& t, const Bdta& a, const RankingFunction& w,
                                 std::uint64_t guard) {
    check_guard(std::pow(static_cast<double>(t.node_count()), a.vars().size()), guard,
                "assignment space |T|^n");
    RankedAnswerList out;
    detail::for_each_total_assignment(t.node_count(), a.vars().size(),
                                      [&](const PartialAssignment& alpha) {
        if (run(a, t, alpha)) out.push_back(RankedAnswer{w(alpha), alpha});
    });
    sort_ranked(out);
    return out;
}

std::optional<RankedDivergence> ranked_equal(const RankedAnswerList& expected,
                                             const RankedAnswerList& actual) {
    for (std::size_t i = 1; i < actual.size(); ++i)
        if (actual[i].score > actual[i - 1].score)
            return RankedDivergence{"scores increase at position " + std::to_string(i)};

    if (expected.size() != actual.size())
        return RankedDivergence{"expected " + std::to_string(expected.size()) + " answers, got " +
                                std::to_string(actual.size())};

    RankedAnswerList a = expected, b = actual;
    sort_ranked(a);
    sort_ranked(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].score != b[i].score)
            return RankedDivergence{"score mismatch at canonical position " + std::to_string(i) +
                                    ": expected " + std::to_string(a[i].score) + ", got " +
                                    std::to_string(b[i].score)};
        if (a[i].assignment != b[i].assignment)
            return RankedDivergence{"assignment mismatch at canonical position " +
                                    std::to_string(i)};
    }
    return std::nullopt;
}

}  // namespace rankenum

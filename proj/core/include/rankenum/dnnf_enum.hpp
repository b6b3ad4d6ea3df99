#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rankenum/circuit.hpp"
#include "rankenum/meldable_pq.hpp"
#include "rankenum/ranking.hpp"

namespace rankenum {

/// Outcome of conditioning: a residual circuit over the unbound variables,
/// or one of the two degenerate cases (no model extends the assignment /
/// every bound variable is consistent and no variable remains).
class ConditionResult {
  public:
    enum class Kind { Residual, Empty, Satisfied };

    static ConditionResult empty() { return ConditionResult(Kind::Empty); }
    static ConditionResult satisfied() { return ConditionResult(Kind::Satisfied); }
    static ConditionResult residual(Circuit c) {
        ConditionResult r(Kind::Residual);
        r.circuit_.emplace(std::move(c));
        return r;
    }

    Kind kind() const { return kind_; }
    const Circuit& circuit() const { return *circuit_; }

  private:
    explicit ConditionResult(Kind kind) : kind_(kind) {}
    Kind kind_;
    std::optional<Circuit> circuit_;
};

/// Conditions a smooth decomposable circuit on a partial assignment: input
/// gates on bound variables become constants which are then propagated. The
/// residual circuit is smooth and decomposable over the unbound variables,
/// and its models are exactly the completions of `t` into models of `c`.
ConditionResult condition(const Circuit& c, const PartialAssignment& t);

struct MaxCompletion {
    Score score = Score::bottom();
    PartialAssignment witness;  // total; meaningful iff score is not bottom
};

/// A maximum-score satisfying assignment of a smooth decomposable circuit,
/// found in one bottom-up pass (AND gates join their children's maxima, OR
/// gates keep the best child).
MaxCompletion max_score(const Circuit& c, const RankingFunction& w);

/// The best total completion of `t` within rel(c), or bottom when none
/// exists. Single bottom-up pass over `c`; equivalent to conditioning on `t`
/// and maximizing the shifted ranking in the residual circuit.
MaxCompletion best_completion(const Circuit& c, const RankingFunction& w, const PartialAssignment& t);

/// Ranked enumeration over smooth multivalued DNNF circuits, determinism not
/// required. No preprocessing: a max-priority queue of prefix assignments
/// keyed by their best-completion score drives a Lawler-Murty style loop.
/// Emits every model exactly once, scores nonincreasing.
///
/// The circuit must outlive the enumerator (the ranking is copied).
/// Independent enumerators over one shared circuit may run concurrently.
class DnnfEnumerator {
  public:
    struct OutputStats {
        std::uint64_t completion_calls = 0;  // best-completion evaluations
        std::uint64_t pops = 0;
    };

    DnnfEnumerator(const Circuit& c, const RankingFunction& w);

    /// Next model with its score, or nullopt when exhausted.
    std::optional<std::pair<double, PartialAssignment>> next();

    /// Work counters for the most recent next() call.
    const OutputStats& last_output_stats() const { return stats_; }

    std::size_t queue_size() const { return queue_.size(); }

    /// Snapshot of the queued prefix assignments (instrumentation hook for
    /// the between-output invariants).
    std::vector<std::pair<double, PartialAssignment>> queue_snapshot() const {
        return queue_.drain();
    }

  private:
    MaxCompletion fused_best_completion(const PartialAssignment& t);

    const Circuit& circuit_;
    RankingFunction ranking_;
    PersistentMaxQueue<double, PartialAssignment> queue_;
    OutputStats stats_;
    std::vector<std::optional<PartialAssignment>> scratch_;
};

}  // namespace rankenum

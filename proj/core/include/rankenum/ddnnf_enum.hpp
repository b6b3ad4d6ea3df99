#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rankenum/circuit.hpp"
#include "rankenum/meldable_pq.hpp"
#include "rankenum/ranking.hpp"

namespace rankenum {

/// Ranked enumeration of all index pairs of two nonincreasing score arrays,
/// ordered by the combined score op(a[i], b[j]). `op` must be monotone in
/// both arguments. O(1) setup; the frontier queue never exceeds K+1 entries
/// after K outputs. Indices are 1-based.
class GridEnumerator {
  public:
    GridEnumerator(std::vector<double> a, std::vector<double> b,
                   std::function<double(double, double)> op);

    std::optional<std::pair<int, int>> next();
    std::size_t queue_size() const { return queue_.size(); }

  private:
    double combined(int i, int j) const;
    static std::uint64_t pack(int i, int j) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
               static_cast<std::uint32_t>(j);
    }

    std::vector<double> a_, b_;
    std::function<double(double, double)> op_;
    PersistentMaxQueue<double, std::pair<int, int>> queue_;
    std::unordered_set<std::uint64_t> seen_;
};

using PaPtr = std::shared_ptr<const PartialAssignment>;

/// Queue payload for input gates and OR gates: the `index`-th assignment of
/// the non-OR gate `gate` (an exit of the owning OR gate).
struct ExitEntry {
    int gate = -1;
    std::uint64_t index = 0;
    PaPtr assignment;
};

/// Queue payload for binary AND gates: a pair of child ranks with their
/// assignments.
struct ProductEntry {
    std::uint64_t j1 = 0, j2 = 0;
    PaPtr tau1, tau2;
};

/// The d-DNNF enumerator's memory: per gate, the nonincreasing answer table
/// T_g grown so far, its fill count, the model count, the frontier queue
/// (exit entries for inputs/OR gates, product entries for AND gates) and,
/// for AND gates, the set of already-seen rank pairs.
///
/// Construction runs the whole preprocessing: products are binarized, model
/// counts computed, and one bottom-up pass over the circuit builds a queue
/// per gate; constant-time melds let OR chains borrow their exits' maxima,
/// so the pass stays linear in the circuit. The circuit must be smooth and
/// decomposable, and is assumed deterministic (counts and duplicate-freeness
/// rely on it). The state owns the working circuit and the ranking.
class EnumState {
  public:
    struct CallStats {
        std::uint64_t pops = 0;
        std::uint64_t pushes = 0;
        std::uint64_t gets = 0;
    };

    EnumState(const Circuit& c, const RankingFunction& w);

    /// The binarized working circuit; gate ids below refer to it.
    const Circuit& circuit() const { return circuit_; }
    const RankingFunction& ranking() const { return ranking_; }

    std::uint64_t count(int gate) const { return counts_[static_cast<std::size_t>(gate)]; }
    std::uint64_t answer_count() const { return count(circuit_.output()); }

    /// The j-th (1-based) assignment of rel(gate) in nonincreasing score
    /// order. Materializes missing table entries on demand.
    PaPtr get(int gate, std::uint64_t j);

    void reset_call_stats();
    const CallStats& call_stats() const { return stats_; }

    /// Largest net queue-size growth of any single gate during the current
    /// call. On calls that performed no catch-up (see below) this is at most
    /// one entry per gate.
    std::uint64_t max_queue_growth_single_gate() const;

    /// Whether the current call had to materialize more than one table entry
    /// in a single get (a "catch-up"): this happens the first time an exit's
    /// preprocessing-time queue entry is consumed, when its rank-1 answer is
    /// not yet in its table, and at most once per gate over a whole run.
    bool call_had_catch_up() const { return call_had_catch_up_; }
    std::uint64_t catch_up_events() const { return catch_up_events_; }

    /// Gate and edge touches during construction (preprocessing linearity
    /// surrogate).
    std::uint64_t preprocess_visits() const { return preprocess_visits_; }

    // Introspection, mainly for tests and --stats output.
    std::uint64_t materialized(int gate) const {
        return gates_[static_cast<std::size_t>(gate)].table.size();
    }
    const PartialAssignment& table_entry(int gate, std::uint64_t j) const {
        return *gates_[static_cast<std::size_t>(gate)].table[static_cast<std::size_t>(j - 1)];
    }
    bool is_product_gate(int gate) const { return circuit_.gate(gate).kind == GateKind::And; }
    std::vector<std::pair<double, ExitEntry>> exit_queue(int gate) const {
        return gates_[static_cast<std::size_t>(gate)].exit_q.drain();
    }
    std::vector<std::pair<double, ProductEntry>> product_queue(int gate) const {
        return gates_[static_cast<std::size_t>(gate)].prod_q.drain();
    }

  private:
    struct PairHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
            return std::hash<std::uint64_t>{}(p.first * 0x9e3779b97f4a7c15ull ^ p.second);
        }
    };

    struct GateState {
        PersistentMaxQueue<double, ExitEntry> exit_q;
        PersistentMaxQueue<double, ProductEntry> prod_q;
        std::vector<PaPtr> table;
        std::unordered_set<std::pair<std::uint64_t, std::uint64_t>, PairHash> seen;
    };

    struct GateCallCounters {
        std::uint64_t pushes = 0;
        std::uint64_t pops = 0;
    };

    void advance(int gate);
    GateCallCounters& touch(int gate);

    Circuit circuit_;
    RankingFunction ranking_;
    std::vector<std::uint64_t> counts_;
    std::vector<GateState> gates_;
    CallStats stats_;
    std::unordered_map<int, GateCallCounters> gates_this_call_;
    bool call_had_catch_up_ = false;
    std::uint64_t catch_up_events_ = 0;
    std::uint64_t preprocess_visits_ = 0;
};

/// Ranked enumeration over smooth multivalued d-DNNF circuits: linear
/// preprocessing (done at construction), then one get() per answer on the
/// output gate. Emits every model exactly once, scores nonincreasing.
class DdnnfEnumerator {
  public:
    DdnnfEnumerator(const Circuit& c, const RankingFunction& w) : state_(c, w) {}

    std::optional<std::pair<double, PartialAssignment>> next();

    std::uint64_t answer_count() const { return state_.answer_count(); }
    EnumState& state() { return state_; }
    const EnumState& state() const { return state_; }

  private:
    EnumState state_;
    std::uint64_t next_index_ = 1;
};

}  // namespace rankenum

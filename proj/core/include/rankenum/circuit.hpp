#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankenum/assignment.hpp"
#include "rankenum/domain.hpp"

namespace rankenum {

enum class GateKind { Input, And, Or };

/// One gate of a multivalued circuit. Input gates carry a (variable, value)
/// pair; internal gates carry their child ids. Child ids are always smaller
/// than the gate's own id, so gate order is a topological order.
struct Gate {
    GateKind kind = GateKind::Input;
    int var = -1;
    int value = -1;
    std::vector<int> children;

    static Gate input(int var, int value) {
        Gate g;
        g.kind = GateKind::Input;
        g.var = var;
        g.value = value;
        return g;
    }
    static Gate and_gate(std::vector<int> children) {
        Gate g;
        g.kind = GateKind::And;
        g.children = std::move(children);
        return g;
    }
    static Gate or_gate(std::vector<int> children) {
        Gate g;
        g.kind = GateKind::Or;
        g.children = std::move(children);
        return g;
    }
};

/// An immutable multivalued circuit: a DAG of input/AND/OR gates over a finite
/// domain and a variable set, with a designated output gate. Construction
/// validates the structural invariants (dense topological ids, arity >= 1,
/// unique gate names, output covering every variable) and precomputes the
/// per-gate variable masks. |C| is the edge count.
class Circuit {
  public:
    Circuit(Domain domain, VarSet vars, std::vector<Gate> gates, std::vector<std::string> gate_names,
            int output);

    const Domain& domain() const { return domain_; }
    const VarSet& vars() const { return vars_; }
    int gate_count() const { return static_cast<int>(gates_.size()); }
    const Gate& gate(int id) const { return gates_[static_cast<std::size_t>(id)]; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::string& gate_name(int id) const { return gate_names_[static_cast<std::size_t>(id)]; }
    int find_gate(std::string_view name) const;  // -1 if absent
    int output() const { return output_; }

    /// Set of variables appearing on inputs reachable from `id`.
    VarMask var_below(int id) const { return var_below_[static_cast<std::size_t>(id)]; }

    /// Total number of edges.
    std::size_t edge_count() const { return edge_count_; }

  private:
    Domain domain_;
    VarSet vars_;
    std::vector<Gate> gates_;
    std::vector<std::string> gate_names_;
    int output_;
    std::vector<VarMask> var_below_;
    std::size_t edge_count_;
};

/// Incremental construction helper. Gates must be added children-first; names
/// are optional and auto-generated when omitted.
class CircuitBuilder {
  public:
    CircuitBuilder(Domain domain, VarSet vars);

    int add_input(int var, int value, std::string name = {});
    int add_and(std::vector<int> children, std::string name = {});
    int add_or(std::vector<int> children, std::string name = {});
    void set_output(int id) { output_ = id; }
    int size() const { return static_cast<int>(gates_.size()); }

    Circuit build() &&;

  private:
    int add_gate(Gate g, std::string name);

    Domain domain_;
    VarSet vars_;
    std::vector<Gate> gates_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int, detail::StringHash, std::equal_to<>> name_index_;
    int output_ = -1;
};

/// Recomputes the per-gate variable masks bottom-up (same values the Circuit
/// caches; exposed for callers that want the whole table).
std::vector<VarMask> compute_var_sets(const Circuit& c);

struct ValidationReport {
    bool decomposable = true;
    int first_nondecomposable = -1;
    bool smooth = true;
    int first_nonsmooth = -1;

    bool ok() const { return decomposable && smooth; }
};

/// Checks decomposability of every AND gate (pairwise-disjoint child variable
/// sets) and smoothness of every OR gate (identical child variable sets).
ValidationReport validate_structural(const Circuit& c);

struct DeterminismReport {
    bool deterministic = true;
    int gate = -1;
    PartialAssignment witness;  // over var_below(gate)
};

/// Exhaustively checks that no OR gate captures the same assignment through
/// two children. Requires a smooth decomposable circuit and |D|^n <= guard.
DeterminismReport check_deterministic_bruteforce(const Circuit& c, std::uint64_t guard = 1000000);

/// Completes every OR child that misses variables by multiplying it with
/// shared "any value" gadgets, so that every OR gate becomes smooth. The
/// satisfying assignments over full support are unchanged. Requires a
/// decomposable circuit; returns the input unchanged when already smooth.
Circuit smooth_transform(const Circuit& c);

/// Rewrites AND gates to be exactly binary: unary ANDs are replaced by their
/// child, wider ANDs by a left-deep chain. OR gates are untouched.
Circuit binarize_products(const Circuit& c);

/// Bottom-up model count per gate: inputs count 1, ANDs multiply, ORs add.
/// The counts equal |rel(g)| on smooth decomposable deterministic circuits
/// (and are upper bounds otherwise). Throws CountOverflowError on 64-bit
/// overflow.
std::vector<std::uint64_t> count_per_gate(const Circuit& c);

/// Membership of a total assignment: inputs test their singleton, ANDs
/// require all children, ORs any child. Decides rel(C) membership for smooth
/// decomposable circuits. Throws if the assignment is not total.
bool evaluate(const Circuit& c, const PartialAssignment& total);

/// Evaluates the sub-DAG rooted at `gate` under an assignment covering
/// var_below(gate).
bool evaluate_gate(const Circuit& c, int gate, const PartialAssignment& a);

/// Evaluates every gate under a total assignment into `out` (resized to the
/// gate count). out[g] is nonzero iff gate g accepts the restriction of the
/// assignment to var_below(g).
void evaluate_all(const Circuit& c, const PartialAssignment& total, std::vector<char>& out);

}  // namespace rankenum

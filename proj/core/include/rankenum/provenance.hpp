#pragma once

#include <vector>

#include "rankenum/automaton.hpp"
#include "rankenum/circuit.hpp"
#include "rankenum/tree.hpp"

namespace rankenum {

/// Gate list in the relaxed intermediate form of the provenance construction:
/// AND/OR gates may have no children (a childless OR computes the empty
/// relation, a childless AND the unit relation {[]}).
struct RawCircuit {
    Domain domain;
    VarSet vars;
    std::vector<Gate> gates;  // children before parents
    std::vector<std::string> names;
    int output = -1;
};

/// Rewrites the relaxed form into a proper circuit: childless ORs delete
/// their dependents, childless ANDs are absorbed, dead gates are swept.
/// Throws EmptyAnswerSetError when the output computes the empty relation,
/// and ValidationError when it captures only the empty assignment.
///
/// When `old_to_new` is given it receives, per input gate, the id of the
/// surviving gate or -1.
Circuit eliminate_nullary(const RawCircuit& raw, std::vector<int>* old_to_new = nullptr);

/// Surviving union gate introduced for (tree node, automaton state).
struct ProvenanceGate {
    int gate;
    int node;
    int state;
};

struct ProvenanceResult {
    Circuit circuit;
    std::vector<ProvenanceGate> union_gates;
};

/// Compiles (automaton, tree) into a smooth multivalued d-DNNF over domain
/// n0..n{|T|-1} (the tree nodes) and the automaton's variables, whose models
/// are exactly the assignments the automaton accepts. One union gate is laid
/// down per (node, state); product gates wire child states and node-local
/// singletons according to the initial/transition rules; the output collects
/// the final states at the root. The automaton must be trimmed (compute_dom
/// must succeed).
ProvenanceResult provenance_circuit(const Bdta& a, const LabeledTree& t);

}  // namespace rankenum

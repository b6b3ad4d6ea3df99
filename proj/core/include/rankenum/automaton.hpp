#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rankenum/assignment.hpp"
#include "rankenum/domain.hpp"
#include "rankenum/tree.hpp"

namespace rankenum {

/// A bottom-up deterministic tree automaton over the product alphabet of tree
/// labels and variable subsets. The initial and transition functions are
/// partial; a missing entry rejects.
class Bdta {
  public:
    struct InitRule {
        int label;
        VarMask varset;
        int state;
    };
    struct DeltaRule {
        int q1, q2, label;
        VarMask varset;
        int state;
    };

    Bdta(std::vector<std::string> labels, VarSet vars, std::vector<std::string> states,
         std::vector<bool> finals, std::vector<InitRule> init, std::vector<DeltaRule> delta);

    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> find_label(std::string_view name) const;
    const VarSet& vars() const { return vars_; }

    int state_count() const { return static_cast<int>(states_.size()); }
    const std::string& state_name(int q) const { return states_[static_cast<std::size_t>(q)]; }
    bool is_final(int q) const { return finals_[static_cast<std::size_t>(q)]; }
    bool has_final() const;

    std::optional<int> initial(int label, VarMask varset) const;
    std::optional<int> transition(int q1, int q2, int label, VarMask varset) const;

    const std::vector<InitRule>& init_rules() const { return init_; }
    const std::vector<DeltaRule>& delta_rules() const { return delta_; }

    std::string describe_init(const InitRule& rule) const;
    std::string describe_delta(const DeltaRule& rule) const;

  private:
    std::vector<std::string> labels_;
    VarSet vars_;
    std::vector<std::string> states_;
    std::vector<bool> finals_;
    std::vector<InitRule> init_;
    std::vector<DeltaRule> delta_;
    std::unordered_map<std::uint64_t, int> init_map_;
    std::unordered_map<std::uint64_t, int> delta_map_;
};

/// Parses the line-based automaton format:
///
///   bdta v1
///   labels <label>...
///   vars <var>...
///   state <name> [final]
///   init <label> <var>...|- -> <state>
///   delta <state> <state> <label> <var>...|- -> <state>
Bdta parse_automaton(std::string_view text);

/// Runs the automaton on the tree with every variable placed on the node the
/// assignment names (the assignment must be total, with node ids as values).
/// Missing initial/transition entries reject.
bool run(const Bdta& a, const LabeledTree& t, const PartialAssignment& alpha);

/// Keeps exactly the states that are producible by some tree and usable in
/// some accepting run, dropping rules that mention removed states. Throws
/// EmptyLanguageError when no accepting run exists at all.
Bdta trim(const Bdta& a);

/// The per-state variable set: the variables collected below any occurrence
/// of the state. Defined exactly for well-formed trimmed automata; every
/// inconsistency (a conflicting assignment, an overlap, a final state not
/// covering every variable) throws NotWellFormedError naming the rule.
std::vector<VarMask> compute_dom(const Bdta& a);

}  // namespace rankenum

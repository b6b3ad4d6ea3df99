#include "rankenum/automaton.hpp"

#include <algorithm>

#include "rankenum/detail/lines.hpp"

namespace rankenum {

namespace {

std::uint64_t init_key(int label, VarMask varset) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(label)) << 16) | varset;
}

std::uint64_t delta_key(int q1, int q2, int label, VarMask varset) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(q1)) << 48) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(q2)) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(label)) << 16) | varset;
}

}  // namespace

Bdta::Bdta(std::vector<std::string> labels, VarSet vars, std::vector<std::string> states,
           std::vector<bool> finals, std::vector<InitRule> init, std::vector<DeltaRule> delta)
    : labels_(std::move(labels)),
      vars_(std::move(vars)),
      states_(std::move(states)),
      finals_(std::move(finals)),
      init_(std::move(init)),
      delta_(std::move(delta)) {
    if (states_.empty()) throw ValidationError("automaton has no states");
    if (states_.size() >= (1u << 16)) throw ValidationError("too many states");
    if (labels_.size() >= (1u << 16)) throw ValidationError("too many labels");
    if (finals_.size() != states_.size()) throw ValidationError("finals list does not match states");

    auto check_state = [&](int q) {
        if (q < 0 || q >= state_count()) throw ValidationError("state id out of range");
    };
    auto check_label = [&](int l) {
        if (l < 0 || l >= static_cast<int>(labels_.size()))
            throw ValidationError("label id out of range");
    };
    VarMask full = vars_.full_mask();
    for (const InitRule& r : init_) {
        check_state(r.state);
        check_label(r.label);
        if ((r.varset & ~full) != 0) throw ValidationError("init rule with unknown variable");
        if (!init_map_.emplace(init_key(r.label, r.varset), r.state).second)
            throw ValidationError("duplicate init rule for " + describe_init(r));
    }
    for (const DeltaRule& r : delta_) {
        check_state(r.q1);
        check_state(r.q2);
        check_state(r.state);
        check_label(r.label);
        if ((r.varset & ~full) != 0) throw ValidationError("delta rule with unknown variable");
        if (!delta_map_.emplace(delta_key(r.q1, r.q2, r.label, r.varset), r.state).second)
            throw ValidationError("duplicate delta rule for " + describe_delta(r));
    }
}

std::optional<int> Bdta::find_label(std::string_view name) const {
    for (int i = 0; i < static_cast<int>(labels_.size()); ++i)
        if (labels_[static_cast<std::size_t>(i)] == name) return i;
    return std::nullopt;
}

bool Bdta::has_final() const {
    return std::find(finals_.begin(), finals_.end(), true) != finals_.end();
}

std::optional<int> Bdta::initial(int label, VarMask varset) const {
    auto it = init_map_.find(init_key(label, varset));
    if (it == init_map_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Bdta::transition(int q1, int q2, int label, VarMask varset) const {
    auto it = delta_map_.find(delta_key(q1, q2, label, varset));
    if (it == delta_map_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::string varset_text(const VarSet& vars, VarMask m) {
    if (m == 0) return "-";
    std::string out;
    for (VarMask rest = m; rest != 0; rest &= rest - 1) {
        if (!out.empty()) out += ' ';
        out += vars.name(__builtin_ctz(rest));
    }
    return out;
}

}  // namespace

std::string Bdta::describe_init(const InitRule& r) const {
    return "init " + labels_[static_cast<std::size_t>(r.label)] + " " + varset_text(vars_, r.varset) +
           " -> " + state_name(r.state);
}

std::string Bdta::describe_delta(const DeltaRule& r) const {
    return "delta " + state_name(r.q1) + " " + state_name(r.q2) + " " +
           labels_[static_cast<std::size_t>(r.label)] + " " + varset_text(vars_, r.varset) + " -> " +
           state_name(r.state);
}

Bdta parse_automaton(std::string_view text) {
    detail::LineReader reader(text);

    detail::Tokens header = reader.expect_line("automaton header");
    if (header.words.size() != 2 || header.words[0] != "bdta" || header.words[1] != "v1")
        throw ParseError(header.line, "expected 'bdta v1'");

    detail::Tokens labels_line = reader.expect_line("labels declaration");
    if (labels_line.words.empty() || labels_line.words[0] != "labels")
        throw ParseError(labels_line.line, "expected 'labels <label>...'");
    std::vector<std::string> labels(labels_line.words.begin() + 1, labels_line.words.end());
    if (labels.empty()) throw ParseError(labels_line.line, "at least one label is required");

    detail::Tokens vars_line = reader.expect_line("vars declaration");
    if (vars_line.words.empty() || vars_line.words[0] != "vars")
        throw ParseError(vars_line.line, "expected 'vars <var>...'");
    VarSet vars(std::vector<std::string>(vars_line.words.begin() + 1, vars_line.words.end()));

    std::vector<std::string> states;
    std::vector<bool> finals;
    std::unordered_map<std::string, int, detail::StringHash, std::equal_to<>> state_ids;
    std::vector<Bdta::InitRule> init;
    std::vector<Bdta::DeltaRule> delta;

    auto label_id = [&](const std::string& name, int line) {
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            if (labels[static_cast<std::size_t>(i)] == name) return i;
        throw ParseError(line, "unknown label '" + name + "'");
    };
    auto state_id = [&](const std::string& name, int line) {
        auto it = state_ids.find(name);
        if (it == state_ids.end()) throw ParseError(line, "unknown state '" + name + "'");
        return it->second;
    };
    // The tokens between `from` and the terminal "-> <state>": either a
    // single "-" (empty set) or variable names.
    auto parse_varset = [&](const std::vector<std::string>& words, std::size_t from, std::size_t to,
                            int line) {
        if (to - from == 1 && words[from] == "-") return VarMask{0};
        VarMask m = 0;
        for (std::size_t i = from; i < to; ++i) {
            auto var = vars.find(words[i]);
            if (!var) throw ParseError(line, "unknown variable '" + words[i] + "'");
            if ((m >> *var) & 1u) throw ParseError(line, "variable '" + words[i] + "' listed twice");
            m |= VarMask{1} << *var;
        }
        if (m == 0) throw ParseError(line, "missing variable set (use '-' for the empty set)");
        return m;
    };

    while (auto tokens = reader.next_line()) {
        const auto& words = tokens->words;
        int line = tokens->line;
        if (words[0] == "state") {
            if (words.size() < 2 || words.size() > 3 || (words.size() == 3 && words[2] != "final"))
                throw ParseError(line, "expected 'state <name> [final]'");
            if (state_ids.contains(words[1]))
                throw ParseError(line, "duplicate state '" + words[1] + "'");
            state_ids.emplace(words[1], static_cast<int>(states.size()));
            states.push_back(words[1]);
            finals.push_back(words.size() == 3);
        } else if (words[0] == "init") {
            // init <label> <vars|-> -> <state>
            if (words.size() < 5 || words[words.size() - 2] != "->")
                throw ParseError(line, "expected 'init <label> <vars|-> -> <state>'");
            Bdta::InitRule r;
            r.label = label_id(words[1], line);
            r.varset = parse_varset(words, 2, words.size() - 2, line);
            r.state = state_id(words.back(), line);
            init.push_back(r);
        } else if (words[0] == "delta") {
            // delta <q1> <q2> <label> <vars|-> -> <state>
            if (words.size() < 7 || words[words.size() - 2] != "->")
                throw ParseError(line, "expected 'delta <q1> <q2> <label> <vars|-> -> <state>'");
            Bdta::DeltaRule r;
            r.q1 = state_id(words[1], line);
            r.q2 = state_id(words[2], line);
            r.label = label_id(words[3], line);
            r.varset = parse_varset(words, 4, words.size() - 2, line);
            r.state = state_id(words.back(), line);
            delta.push_back(r);
        } else {
            throw ParseError(line, "unexpected line '" + words[0] + "'");
        }
    }
    if (states.empty()) throw ParseError(reader.line_count(), "automaton declares no states");
    return Bdta(std::move(labels), std::move(vars), std::move(states), std::move(finals),
                std::move(init), std::move(delta));
}

bool run(const Bdta& a, const LabeledTree& t, const PartialAssignment& alpha) {
    if (alpha.support() != a.vars().full_mask())
        throw ValidationError("run requires a total assignment of the query variables");
    std::vector<VarMask> node_vars(static_cast<std::size_t>(t.node_count()), 0);
    for (int var = 0; var < a.vars().size(); ++var) {
        std::int32_t node = alpha.value(var);
        if (node < 0 || node >= t.node_count())
            throw ValidationError("variable '" + a.vars().name(var) + "' maps outside the tree");
        node_vars[static_cast<std::size_t>(node)] |= VarMask{1} << var;
    }

    // Preorder ids put children after parents, so a reverse sweep is
    // bottom-up.
    std::vector<int> state(static_cast<std::size_t>(t.node_count()), -1);
    for (int id = t.node_count() - 1; id >= 0; --id) {
        auto label = a.find_label(t.label(id));
        if (!label) return false;
        std::optional<int> q;
        if (t.is_leaf(id)) {
            q = a.initial(*label, node_vars[static_cast<std::size_t>(id)]);
        } else {
            q = a.transition(state[static_cast<std::size_t>(t.left(id))],
                             state[static_cast<std::size_t>(t.right(id))], *label,
                             node_vars[static_cast<std::size_t>(id)]);
        }
        if (!q) return false;
        state[static_cast<std::size_t>(id)] = *q;
    }
    return a.is_final(state[0]);
}

Bdta trim(const Bdta& a) {
    int n = a.state_count();
    std::vector<char> producible(static_cast<std::size_t>(n), 0);
    for (const auto& r : a.init_rules()) producible[static_cast<std::size_t>(r.state)] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.delta_rules()) {
            if (producible[static_cast<std::size_t>(r.q1)] &&
                producible[static_cast<std::size_t>(r.q2)] &&
                !producible[static_cast<std::size_t>(r.state)]) {
                producible[static_cast<std::size_t>(r.state)] = 1;
                changed = true;
            }
        }
    }

    std::vector<char> useful(static_cast<std::size_t>(n), 0);
    for (int q = 0; q < n; ++q)
        if (a.is_final(q) && producible[static_cast<std::size_t>(q)])
            useful[static_cast<std::size_t>(q)] = 1;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.delta_rules()) {
            if (!useful[static_cast<std::size_t>(r.state)]) continue;
            if (!producible[static_cast<std::size_t>(r.q1)] ||
                !producible[static_cast<std::size_t>(r.q2)])
                continue;
            for (int q : {r.q1, r.q2}) {
                if (!useful[static_cast<std::size_t>(q)]) {
                    useful[static_cast<std::size_t>(q)] = 1;
                    changed = true;
                }
            }
        }
    }

    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    std::vector<std::string> states;
    std::vector<bool> finals;
    for (int q = 0; q < n; ++q) {
        if (!useful[static_cast<std::size_t>(q)]) continue;
        remap[static_cast<std::size_t>(q)] = static_cast<int>(states.size());
        states.push_back(a.state_name(q));
        finals.push_back(a.is_final(q));
    }
    if (states.empty()) throw EmptyLanguageError("the automaton accepts no tree");

    std::vector<Bdta::InitRule> init;
    for (auto r : a.init_rules()) {
        if (remap[static_cast<std::size_t>(r.state)] < 0) continue;
        r.state = remap[static_cast<std::size_t>(r.state)];
        init.push_back(r);
    }
    std::vector<Bdta::DeltaRule> delta;
    for (auto r : a.delta_rules()) {
        if (remap[static_cast<std::size_t>(r.q1)] < 0 || remap[static_cast<std::size_t>(r.q2)] < 0 ||
            remap[static_cast<std::size_t>(r.state)] < 0)
            continue;
        r.q1 = remap[static_cast<std::size_t>(r.q1)];
        r.q2 = remap[static_cast<std::size_t>(r.q2)];
        r.state = remap[static_cast<std::size_t>(r.state)];
        delta.push_back(r);
    }
    return Bdta(a.labels(), a.vars(), std::move(states), std::move(finals), std::move(init),
                std::move(delta));
}

std::vector<VarMask> compute_dom(const Bdta& a) {
    int n = a.state_count();
    std::vector<VarMask> dom(static_cast<std::size_t>(n), 0);
    std::vector<char> known(static_cast<std::size_t>(n), 0);

    auto assign = [&](int q, VarMask m, const std::string& rule) {
        if (known[static_cast<std::size_t>(q)]) {
            if (dom[static_cast<std::size_t>(q)] != m)
                throw NotWellFormedError("conflicting variable sets for state '" + a.state_name(q) +
                                         "' at rule: " + rule);
            return false;
        }
        known[static_cast<std::size_t>(q)] = 1;
        dom[static_cast<std::size_t>(q)] = m;
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : a.init_rules())
            changed |= assign(r.state, r.varset, a.describe_init(r));
        for (const auto& r : a.delta_rules()) {
            if (!known[static_cast<std::size_t>(r.q1)] || !known[static_cast<std::size_t>(r.q2)])
                continue;
            VarMask d1 = dom[static_cast<std::size_t>(r.q1)];
            VarMask d2 = dom[static_cast<std::size_t>(r.q2)];
            if ((d1 & d2) || (d1 & r.varset) || (d2 & r.varset))
                throw NotWellFormedError("a variable is assigned twice at rule: " +
                                         a.describe_delta(r));
            changed |= assign(r.state, d1 | d2 | r.varset, a.describe_delta(r));
        }
    }

    for (int q = 0; q < n; ++q)
        if (!known[static_cast<std::size_t>(q)])
            throw ValidationError("state '" + a.state_name(q) +
                                  "' is not producible; trim the automaton first");
    for (int q = 0; q < n; ++q)
        if (a.is_final(q) && dom[static_cast<std::size_t>(q)] != a.vars().full_mask())
            throw NotWellFormedError("final state '" + a.state_name(q) +
                                     "' does not cover every variable");
    return dom;
}

}  // namespace rankenum

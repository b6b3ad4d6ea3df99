#include "rankenum/provenance.hpp"

namespace rankenum {

Circuit eliminate_nullary(const RawCircuit& raw, std::vector<int>* old_to_new) {
    int n = static_cast<int>(raw.gates.size());
    if (n == 0) throw ValidationError("empty gate list");
    if (raw.output < 0 || raw.output >= n) throw ValidationError("output gate id out of range");

    // Bottom-up classification: empty relation, unit relation {[]}, or live.
    constexpr int kEmpty = -2, kUnit = -1;
    std::vector<int> state(static_cast<std::size_t>(n), kEmpty);
    constexpr int kLive = 0;  // placeholder before ids are assigned

    for (int i = 0; i < n; ++i) {
        const Gate& g = raw.gates[static_cast<std::size_t>(i)];
        int& slot = state[static_cast<std::size_t>(i)];
        switch (g.kind) {
            case GateKind::Input:
                slot = kLive;
                break;
            case GateKind::And: {
                bool empty = false;
                bool any_live = false;
                for (int child : g.children) {
                    int s = state[static_cast<std::size_t>(child)];
                    if (s == kEmpty) {
                        empty = true;
                        break;
                    }
                    if (s != kUnit) any_live = true;
                }
                slot = empty ? kEmpty : (any_live ? kLive : kUnit);
                break;
            }
            case GateKind::Or: {
                bool any_live = false, any_unit = false;
                for (int child : g.children) {
                    int s = state[static_cast<std::size_t>(child)];
                    if (s == kEmpty) continue;
                    (s == kUnit ? any_unit : any_live) = true;
                }
                if (any_live && any_unit)
                    throw ValidationError("union gate '" + raw.names[static_cast<std::size_t>(i)] +
                                          "' mixes unit and non-unit children");
                slot = any_live ? kLive : (any_unit ? kUnit : kEmpty);
                break;
            }
        }
    }

    if (state[static_cast<std::size_t>(raw.output)] == kEmpty)
        throw EmptyAnswerSetError("the circuit has no satisfying assignment");
    if (state[static_cast<std::size_t>(raw.output)] == kUnit)
        throw ValidationError("the output captures only the empty assignment");

    // Sweep: keep live gates reachable from the output through live children.
    std::vector<char> keep(static_cast<std::size_t>(n), 0);
    keep[static_cast<std::size_t>(raw.output)] = 1;
    for (int i = n - 1; i >= 0; --i) {
        if (!keep[static_cast<std::size_t>(i)]) continue;
        for (int child : raw.gates[static_cast<std::size_t>(i)].children)
            if (state[static_cast<std::size_t>(child)] == kLive)
                keep[static_cast<std::size_t>(child)] = 1;
    }

    CircuitBuilder builder(raw.domain, raw.vars);
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (!keep[static_cast<std::size_t>(i)] || state[static_cast<std::size_t>(i)] != kLive)
            continue;
        const Gate& g = raw.gates[static_cast<std::size_t>(i)];
        const std::string& name = raw.names[static_cast<std::size_t>(i)];
        if (g.kind == GateKind::Input) {
            remap[static_cast<std::size_t>(i)] = builder.add_input(g.var, g.value, name);
            continue;
        }
        std::vector<int> children;
        for (int child : g.children)
            if (state[static_cast<std::size_t>(child)] == kLive)
                children.push_back(remap[static_cast<std::size_t>(child)]);
        remap[static_cast<std::size_t>(i)] = g.kind == GateKind::And
                                                 ? builder.add_and(std::move(children), name)
                                                 : builder.add_or(std::move(children), name);
    }
    builder.set_output(remap[static_cast<std::size_t>(raw.output)]);
    if (old_to_new) *old_to_new = std::move(remap);
    return std::move(builder).build();
}

ProvenanceResult provenance_circuit(const Bdta& a, const LabeledTree& t) {
    std::vector<VarMask> dom = compute_dom(a);
    const VarSet& vars = a.vars();
    VarMask full = vars.full_mask();
    int states = a.state_count();
    int nodes = t.node_count();

    std::vector<std::string> node_names;
    node_names.reserve(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) node_names.push_back("n" + std::to_string(k));

    RawCircuit raw{Domain(std::move(node_names)), vars, {}, {}, -1};

    std::unordered_map<std::string, int, detail::StringHash, std::equal_to<>> name_ids;
    auto add_gate = [&](Gate g, std::string name) {
        while (name_ids.contains(name)) name += "_";
        name_ids.emplace(name, static_cast<int>(raw.gates.size()));
        raw.gates.push_back(std::move(g));
        raw.names.push_back(std::move(name));
        return static_cast<int>(raw.gates.size()) - 1;
    };

    // Shared singleton inputs <var : node>, created on first use.
    std::vector<int> input_id(static_cast<std::size_t>(vars.size() * nodes), -1);
    auto singleton = [&](int var, int node) {
        int& slot = input_id[static_cast<std::size_t>(var * nodes + node)];
        if (slot < 0)
            slot = add_gate(Gate::input(var, node),
                            "in_" + vars.name(var) + "_n" + std::to_string(node));
        return slot;
    };

    // union_gate[node * states + q], filled per node in postorder.
    std::vector<int> union_gate(static_cast<std::size_t>(nodes * states), -1);
    int product_seq = 0;

    // Preorder ids: a reverse sweep processes children before parents.
    for (int node = nodes - 1; node >= 0; --node) {
        auto label = a.find_label(t.label(node));
        std::vector<std::vector<int>> pending(static_cast<std::size_t>(states));
        if (label) {
            if (t.is_leaf(node)) {
                // Every subset of variables this leaf could carry.
                VarMask y = full;
                while (true) {
                    if (auto q = a.initial(*label, y)) {
                        std::vector<int> children;
                        for (VarMask m = y; m != 0; m &= m - 1)
                            children.push_back(singleton(__builtin_ctz(m), node));
                        pending[static_cast<std::size_t>(*q)].push_back(
                            add_gate(Gate::and_gate(std::move(children)),
                                     "t" + std::to_string(product_seq++)));
                    }
                    if (y == 0) break;
                    y = (y - 1) & full;
                }
            } else {
                int left = t.left(node), right = t.right(node);
                for (int q1 = 0; q1 < states; ++q1) {
                    for (int q2 = 0; q2 < states; ++q2) {
                        VarMask used = dom[static_cast<std::size_t>(q1)] |
                                       dom[static_cast<std::size_t>(q2)];
                        if (dom[static_cast<std::size_t>(q1)] & dom[static_cast<std::size_t>(q2)])
                            continue;
                        VarMask spare = full & ~used;
                        VarMask y = spare;
                        while (true) {
                            if (auto q = a.transition(q1, q2, *label, y)) {
                                std::vector<int> children{
                                    union_gate[static_cast<std::size_t>(left * states + q1)],
                                    union_gate[static_cast<std::size_t>(right * states + q2)]};
                                for (VarMask m = y; m != 0; m &= m - 1)
                                    children.push_back(singleton(__builtin_ctz(m), node));
                                pending[static_cast<std::size_t>(*q)].push_back(
                                    add_gate(Gate::and_gate(std::move(children)),
                                             "t" + std::to_string(product_seq++)));
                            }
                            if (y == 0) break;
                            y = (y - 1) & spare;
                        }
                    }
                }
            }
        }
        for (int q = 0; q < states; ++q)
            union_gate[static_cast<std::size_t>(node * states + q)] =
                add_gate(Gate::or_gate(std::move(pending[static_cast<std::size_t>(q)])),
                         "u" + std::to_string(node) + "_" + a.state_name(q));
    }

    std::vector<int> final_gates;
    for (int q = 0; q < states; ++q)
        if (a.is_final(q)) final_gates.push_back(union_gate[static_cast<std::size_t>(q)]);  // node 0
    raw.output = add_gate(Gate::or_gate(std::move(final_gates)), "out");

    std::vector<int> remap;
    Circuit circuit = eliminate_nullary(raw, &remap);

    ProvenanceResult result{std::move(circuit), {}};
    for (int node = 0; node < nodes; ++node) {
        for (int q = 0; q < states; ++q) {
            int mapped = remap[static_cast<std::size_t>(
                union_gate[static_cast<std::size_t>(node * states + q)])];
            if (mapped >= 0) result.union_gates.push_back(ProvenanceGate{mapped, node, q});
        }
    }
    return result;
}

}  // namespace rankenum

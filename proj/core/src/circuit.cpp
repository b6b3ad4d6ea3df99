#include "rankenum/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace rankenum {

namespace {

void check_gate(const Gate& g, int id, int var_count, int value_count) {
    if (g.kind == GateKind::Input) {
        if (g.var < 0 || g.var >= var_count)
            throw ValidationError("gate " + std::to_string(id) + ": variable id out of range");
        if (g.value < 0 || g.value >= value_count)
            throw ValidationError("gate " + std::to_string(id) + ": value id out of range");
    } else {
        if (g.children.empty())
            throw ValidationError("gate " + std::to_string(id) + ": internal gate without children");
        for (int child : g.children)
            if (child < 0 || child >= id)
                throw ValidationError("gate " + std::to_string(id) + ": child id " +
                                      std::to_string(child) + " breaks topological order");
    }
}

}  // namespace

Circuit::Circuit(Domain domain, VarSet vars, std::vector<Gate> gates,
                 std::vector<std::string> gate_names, int output)
    : domain_(std::move(domain)),
      vars_(std::move(vars)),
      gates_(std::move(gates)),
      gate_names_(std::move(gate_names)),
      output_(output) {
    if (gates_.empty()) throw ValidationError("circuit has no gates");
    if (gate_names_.size() != gates_.size())
        throw ValidationError("gate name list does not match gate list");
    if (output_ < 0 || output_ >= gate_count()) throw ValidationError("output gate id out of range");

    std::unordered_map<std::string, int, detail::StringHash, std::equal_to<>> seen;
    for (int i = 0; i < gate_count(); ++i) {
        const std::string& name = gate_names_[static_cast<std::size_t>(i)];
        if (name.empty()) throw ValidationError("gate " + std::to_string(i) + " has no name");
        if (!seen.emplace(name, i).second)
            throw ValidationError("duplicate gate name '" + name + "'");
    }

    edge_count_ = 0;
    var_below_.resize(gates_.size(), 0);
    for (int i = 0; i < gate_count(); ++i) {
        const Gate& g = gates_[static_cast<std::size_t>(i)];
        check_gate(g, i, vars_.size(), domain_.size());
        if (g.kind == GateKind::Input) {
            var_below_[static_cast<std::size_t>(i)] = VarMask{1} << g.var;
        } else {
            VarMask m = 0;
            for (int child : g.children) m |= var_below_[static_cast<std::size_t>(child)];
            var_below_[static_cast<std::size_t>(i)] = m;
            edge_count_ += g.children.size();
        }
    }
    if (var_below_[static_cast<std::size_t>(output_)] != vars_.full_mask())
        throw ValidationError("output gate does not cover every declared variable");
}

int Circuit::find_gate(std::string_view name) const {
    for (int i = 0; i < gate_count(); ++i)
        if (gate_names_[static_cast<std::size_t>(i)] == name) return i;
    return -1;
}

CircuitBuilder::CircuitBuilder(Domain domain, VarSet vars)
    : domain_(std::move(domain)), vars_(std::move(vars)) {}

int CircuitBuilder::add_gate(Gate g, std::string name) {
    int id = static_cast<int>(gates_.size());
    check_gate(g, id, vars_.size(), domain_.size());
    if (name.empty()) name = "_g" + std::to_string(id);
    while (name_index_.contains(name)) name += "_";
    name_index_.emplace(name, id);
    gates_.push_back(std::move(g));
    names_.push_back(std::move(name));
    return id;
}

int CircuitBuilder::add_input(int var, int value, std::string name) {
    return add_gate(Gate::input(var, value), std::move(name));
}

int CircuitBuilder::add_and(std::vector<int> children, std::string name) {
    return add_gate(Gate::and_gate(std::move(children)), std::move(name));
}

int CircuitBuilder::add_or(std::vector<int> children, std::string name) {
    return add_gate(Gate::or_gate(std::move(children)), std::move(name));
}

Circuit CircuitBuilder::build() && {
    if (output_ < 0) throw ValidationError("no output gate set");
    return Circuit(std::move(domain_), std::move(vars_), std::move(gates_), std::move(names_), output_);
}

std::vector<VarMask> compute_var_sets(const Circuit& c) {
    std::vector<VarMask> out(static_cast<std::size_t>(c.gate_count()), 0);
    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        if (g.kind == GateKind::Input) {
            out[static_cast<std::size_t>(i)] = VarMask{1} << g.var;
        } else {
            VarMask m = 0;
            for (int child : g.children) m |= out[static_cast<std::size_t>(child)];
            out[static_cast<std::size_t>(i)] = m;
        }
    }
    return out;
}

ValidationReport validate_structural(const Circuit& c) {
    ValidationReport report;
    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        if (g.kind == GateKind::And) {
            VarMask seen = 0;
            for (int child : g.children) {
                VarMask m = c.var_below(child);
                if ((seen & m) != 0) {
                    if (report.decomposable) {
                        report.decomposable = false;
                        report.first_nondecomposable = i;
                    }
                    break;
                }
                seen |= m;
            }
        } else if (g.kind == GateKind::Or) {
            VarMask first = c.var_below(g.children.front());
            for (int child : g.children) {
                if (c.var_below(child) != first) {
                    if (report.smooth) {
                        report.smooth = false;
                        report.first_nonsmooth = i;
                    }
                    break;
                }
            }
        }
    }
    return report;
}

DeterminismReport check_deterministic_bruteforce(const Circuit& c, std::uint64_t guard) {
    ValidationReport v = validate_structural(c);
    if (!v.ok()) throw ValidationError("determinism check requires a smooth decomposable circuit");

    double space = std::pow(static_cast<double>(c.domain().size()), c.vars().size());
    if (space > static_cast<double>(guard))
        throw GuardError("assignment space |D|^n exceeds the brute-force limit of " +
                         std::to_string(guard));

    DeterminismReport report;
    std::vector<char> bits;
    bool stop = false;
    detail::for_each_total_assignment(c.domain().size(), c.vars().size(),
                                      [&](const PartialAssignment& a) {
        if (stop) return;
        evaluate_all(c, a, bits);
        for (int i = 0; i < c.gate_count(); ++i) {
            const Gate& g = c.gate(i);
            if (g.kind != GateKind::Or) continue;
            int hits = 0;
            for (int child : g.children)
                if (bits[static_cast<std::size_t>(child)]) ++hits;
            if (hits >= 2) {
                report.deterministic = false;
                report.gate = i;
                report.witness = a.restricted(c.var_below(i));
                stop = true;
                return;
            }
        }
    });
    return report;
}

Circuit smooth_transform(const Circuit& c) {
    ValidationReport v = validate_structural(c);
    if (!v.decomposable) throw ValidationError("smoothing requires a decomposable circuit");
    if (v.smooth) return c;

    CircuitBuilder builder(c.domain(), c.vars());
    std::vector<int> remap(static_cast<std::size_t>(c.gate_count()), -1);
    std::vector<int> gadget(static_cast<std::size_t>(c.vars().size()), -1);

    auto any_value_gadget = [&](int var) {
        if (gadget[static_cast<std::size_t>(var)] >= 0) return gadget[static_cast<std::size_t>(var)];
        std::vector<int> inputs;
        inputs.reserve(static_cast<std::size_t>(c.domain().size()));
        for (int value = 0; value < c.domain().size(); ++value)
            inputs.push_back(builder.add_input(var, value));
        int id = builder.add_or(std::move(inputs));
        gadget[static_cast<std::size_t>(var)] = id;
        return id;
    };

    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        switch (g.kind) {
            case GateKind::Input:
                remap[static_cast<std::size_t>(i)] = builder.add_input(g.var, g.value, c.gate_name(i));
                break;
            case GateKind::And: {
                std::vector<int> children;
                children.reserve(g.children.size());
                for (int child : g.children) children.push_back(remap[static_cast<std::size_t>(child)]);
                remap[static_cast<std::size_t>(i)] = builder.add_and(std::move(children), c.gate_name(i));
                break;
            }
            case GateKind::Or: {
                std::vector<int> children;
                children.reserve(g.children.size());
                for (int child : g.children) {
                    VarMask missing = c.var_below(i) & ~c.var_below(child);
                    int mapped = remap[static_cast<std::size_t>(child)];
                    if (missing == 0) {
                        children.push_back(mapped);
                        continue;
                    }
                    std::vector<int> parts{mapped};
                    for (VarMask m = missing; m != 0; m &= m - 1)
                        parts.push_back(any_value_gadget(__builtin_ctz(m)));
                    children.push_back(builder.add_and(std::move(parts)));
                }
                remap[static_cast<std::size_t>(i)] = builder.add_or(std::move(children), c.gate_name(i));
                break;
            }
        }
    }
    builder.set_output(remap[static_cast<std::size_t>(c.output())]);
    return std::move(builder).build();
}

Circuit binarize_products(const Circuit& c) {
    CircuitBuilder builder(c.domain(), c.vars());
    std::vector<int> remap(static_cast<std::size_t>(c.gate_count()), -1);

    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        switch (g.kind) {
            case GateKind::Input:
                remap[static_cast<std::size_t>(i)] = builder.add_input(g.var, g.value, c.gate_name(i));
                break;
            case GateKind::Or: {
                std::vector<int> children;
                children.reserve(g.children.size());
                for (int child : g.children) children.push_back(remap[static_cast<std::size_t>(child)]);
                remap[static_cast<std::size_t>(i)] = builder.add_or(std::move(children), c.gate_name(i));
                break;
            }
            case GateKind::And: {
                if (g.children.size() == 1) {
                    remap[static_cast<std::size_t>(i)] = remap[static_cast<std::size_t>(g.children[0])];
                    break;
                }
                int acc = remap[static_cast<std::size_t>(g.children[0])];
                for (std::size_t k = 1; k < g.children.size(); ++k) {
                    int next = remap[static_cast<std::size_t>(g.children[k])];
                    bool last = k + 1 == g.children.size();
                    acc = builder.add_and({acc, next}, last ? c.gate_name(i) : std::string{});
                }
                remap[static_cast<std::size_t>(i)] = acc;
                break;
            }
        }
    }
    builder.set_output(remap[static_cast<std::size_t>(c.output())]);
    return std::move(builder).build();
}

std::vector<std::uint64_t> count_per_gate(const Circuit& c) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(c.gate_count()), 0);
    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        if (g.kind == GateKind::Input) {
            counts[static_cast<std::size_t>(i)] = 1;
            continue;
        }
        std::uint64_t acc = g.kind == GateKind::And ? 1 : 0;
        for (int child : g.children) {
            std::uint64_t x = counts[static_cast<std::size_t>(child)];
            bool overflow = g.kind == GateKind::And ? __builtin_mul_overflow(acc, x, &acc)
                                                    : __builtin_add_overflow(acc, x, &acc);
            if (overflow)
                throw CountOverflowError("model count at gate '" + c.gate_name(i) +
                                         "' exceeds 64 bits");
        }
        counts[static_cast<std::size_t>(i)] = acc;
    }
    return counts;
}

void evaluate_all(const Circuit& c, const PartialAssignment& total, std::vector<char>& out) {
    out.assign(static_cast<std::size_t>(c.gate_count()), 0);
    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        bool value;
        switch (g.kind) {
            case GateKind::Input:
                value = total.value(g.var) == g.value;
                break;
            case GateKind::And:
                value = true;
                for (int child : g.children) value = value && out[static_cast<std::size_t>(child)];
                break;
            default:
                value = false;
                for (int child : g.children) value = value || out[static_cast<std::size_t>(child)];
                break;
        }
        out[static_cast<std::size_t>(i)] = value ? 1 : 0;
    }
}

bool evaluate(const Circuit& c, const PartialAssignment& total) {
    if (total.support() != c.vars().full_mask())
        throw ValidationError("evaluate requires a total assignment");
    std::vector<char> bits;
    evaluate_all(c, total, bits);
    return bits[static_cast<std::size_t>(c.output())] != 0;
}

bool evaluate_gate(const Circuit& c, int gate, const PartialAssignment& a) {
    if ((a.support() & c.var_below(gate)) != c.var_below(gate))
        throw ValidationError("assignment does not cover var(gate)");
    // Evaluate only the sub-DAG below `gate`; other inputs may touch
    // variables outside the assignment's support.
    std::vector<char> reachable(static_cast<std::size_t>(gate) + 1, 0);
    reachable[static_cast<std::size_t>(gate)] = 1;
    for (int i = gate; i >= 0; --i) {
        if (!reachable[static_cast<std::size_t>(i)]) continue;
        for (int child : c.gate(i).children) reachable[static_cast<std::size_t>(child)] = 1;
    }
    std::vector<char> bits(static_cast<std::size_t>(gate) + 1, 0);
    for (int i = 0; i <= gate; ++i) {
        if (!reachable[static_cast<std::size_t>(i)]) continue;
        const Gate& g = c.gate(i);
        bool value;
        switch (g.kind) {
            case GateKind::Input:
                value = a.value(g.var) == g.value;
                break;
            case GateKind::And:
                value = true;
                for (int child : g.children) value = value && bits[static_cast<std::size_t>(child)];
                break;
            default:
                value = false;
                for (int child : g.children) value = value || bits[static_cast<std::size_t>(child)];
                break;
        }
        bits[static_cast<std::size_t>(i)] = value ? 1 : 0;
    }
    return bits[static_cast<std::size_t>(gate)] != 0;
}

}  // namespace rankenum

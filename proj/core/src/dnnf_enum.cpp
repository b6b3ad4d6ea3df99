#include "rankenum/dnnf_enum.hpp"

#include <algorithm>

namespace rankenum {

namespace {

void require_smooth_dnnf(const Circuit& c, const char* who) {
    ValidationReport report = validate_structural(c);
    if (!report.ok())
        throw ValidationError(std::string(who) + " requires a smooth decomposable circuit (gate '" +
                              c.gate_name(report.decomposable ? report.first_nonsmooth
                                                              : report.first_nondecomposable) +
                              "' violates)");
}

/// Shared bottom-up pass: per gate, a maximum-score completion of `t` over
/// the gate's unbound variables, or nullopt when the gate has none.
void completion_pass(const Circuit& c, const RankingFunction& w, const PartialAssignment& t,
                     std::vector<std::optional<PartialAssignment>>& best) {
    best.assign(static_cast<std::size_t>(c.gate_count()), std::nullopt);
    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        switch (g.kind) {
            case GateKind::Input:
                if (t.defined(g.var)) {
                    if (t.value(g.var) == g.value) best[static_cast<std::size_t>(i)] = PartialAssignment();
                } else {
                    best[static_cast<std::size_t>(i)] = PartialAssignment().extended(g.var, g.value);
                }
                break;
            case GateKind::And: {
                PartialAssignment acc;
                bool ok = true;
                for (int child : g.children) {
                    const auto& sub = best[static_cast<std::size_t>(child)];
                    if (!sub) {
                        ok = false;
                        break;
                    }
                    acc = join(acc, *sub);  // disjoint by decomposability
                }
                if (ok) best[static_cast<std::size_t>(i)] = std::move(acc);
                break;
            }
            case GateKind::Or: {
                // Children range over the same variables (smoothness), so
                // their shifted scores are directly comparable.
                std::optional<PartialAssignment> winner;
                double winner_score = 0.0;
                for (int child : g.children) {
                    const auto& sub = best[static_cast<std::size_t>(child)];
                    if (!sub) continue;
                    double score = w(join(*sub, t));
                    if (!winner || score > winner_score) {
                        winner = *sub;
                        winner_score = score;
                    }
                }
                best[static_cast<std::size_t>(i)] = std::move(winner);
                break;
            }
        }
    }
}

MaxCompletion completion_result(const Circuit& c, const RankingFunction& w, const PartialAssignment& t,
                                const std::vector<std::optional<PartialAssignment>>& best) {
    const auto& root = best[static_cast<std::size_t>(c.output())];
    if (!root) return {};
    MaxCompletion out;
    out.witness = join(*root, t);
    out.score = Score::of(w(out.witness));
    return out;
}

}  // namespace

ConditionResult condition(const Circuit& c, const PartialAssignment& t) {
    require_smooth_dnnf(c, "condition");

    VarMask bound = t.support() & c.vars().full_mask();
    std::vector<std::string> residual_names;
    std::vector<int> var_remap(static_cast<std::size_t>(c.vars().size()), -1);
    for (int var = 0; var < c.vars().size(); ++var) {
        if ((bound >> var) & 1u) continue;
        var_remap[static_cast<std::size_t>(var)] = static_cast<int>(residual_names.size());
        residual_names.push_back(c.vars().name(var));
    }

    // Per-gate state: -2 empty, -1 satisfied (no unbound variable below),
    // otherwise the id in the rebuilt circuit.
    constexpr int kEmpty = -2, kSatisfied = -1;
    std::vector<int> state(static_cast<std::size_t>(c.gate_count()), kEmpty);

    std::optional<CircuitBuilder> builder;
    if (!residual_names.empty()) builder.emplace(c.domain(), VarSet(residual_names));

    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        int& slot = state[static_cast<std::size_t>(i)];
        switch (g.kind) {
            case GateKind::Input:
                if (t.defined(g.var))
                    slot = t.value(g.var) == g.value ? kSatisfied : kEmpty;
                else
                    slot = builder->add_input(var_remap[static_cast<std::size_t>(g.var)], g.value,
                                              c.gate_name(i));
                break;
            case GateKind::And: {
                std::vector<int> live;
                bool empty = false;
                for (int child : g.children) {
                    int s = state[static_cast<std::size_t>(child)];
                    if (s == kEmpty) {
                        empty = true;
                        break;
                    }
                    if (s != kSatisfied) live.push_back(s);
                }
                if (empty)
                    slot = kEmpty;
                else if (live.empty())
                    slot = kSatisfied;
                else
                    slot = builder->add_and(std::move(live), c.gate_name(i));
                break;
            }
            case GateKind::Or: {
                // Smoothness: surviving children either all reduce to
                // "satisfied" or all stay live over the same variables.
                std::vector<int> live;
                bool satisfied = false;
                for (int child : g.children) {
                    int s = state[static_cast<std::size_t>(child)];
                    if (s == kEmpty) continue;
                    if (s == kSatisfied)
                        satisfied = true;
                    else
                        live.push_back(s);
                }
                if (satisfied)
                    slot = kSatisfied;
                else if (live.empty())
                    slot = kEmpty;
                else
                    slot = builder->add_or(std::move(live), c.gate_name(i));
                break;
            }
        }
    }

    int root = state[static_cast<std::size_t>(c.output())];
    if (root == kEmpty) return ConditionResult::empty();
    if (root == kSatisfied) return ConditionResult::satisfied();
    builder->set_output(root);
    return ConditionResult::residual(std::move(*builder).build());
}

MaxCompletion max_score(const Circuit& c, const RankingFunction& w) {
    return best_completion(c, w, PartialAssignment());
}

MaxCompletion best_completion(const Circuit& c, const RankingFunction& w, const PartialAssignment& t) {
    require_smooth_dnnf(c, "best_completion");
    std::vector<std::optional<PartialAssignment>> best;
    completion_pass(c, w, t, best);
    return completion_result(c, w, t, best);
}

DnnfEnumerator::DnnfEnumerator(const Circuit& c, const RankingFunction& w)
    : circuit_(c), ranking_(w) {
    require_smooth_dnnf(c, "ranked DNNF enumeration");
    MaxCompletion root = fused_best_completion(PartialAssignment());
    // rel(C) is never empty for a structurally valid circuit.
    if (root.score.is_bottom()) throw Error("internal: circuit with empty relation");
    queue_ = queue_.push(root.score.value(), PartialAssignment());
}

MaxCompletion DnnfEnumerator::fused_best_completion(const PartialAssignment& t) {
    ++stats_.completion_calls;
    completion_pass(circuit_, ranking_, t, scratch_);
    return completion_result(circuit_, ranking_, t, scratch_);
}

std::optional<std::pair<double, PartialAssignment>> DnnfEnumerator::next() {
    stats_ = OutputStats{};
    auto popped = queue_.pop_max();
    if (!popped) return std::nullopt;
    stats_.pops = 1;
    queue_ = popped->second;
    PartialAssignment current = popped->first.second;

    int n = circuit_.vars().size();
    for (int var = current.support_size(); var < n; ++var) {
        std::optional<PartialAssignment> best;
        double best_score = 0.0;
        std::vector<std::pair<double, PartialAssignment>> others;
        for (int value = 0; value < circuit_.domain().size(); ++value) {
            PartialAssignment extension = current.extended(var, value);
            MaxCompletion mc = fused_best_completion(extension);
            if (mc.score.is_bottom()) continue;
            double score = mc.score.value();
            if (!best || score > best_score) {
                if (best) others.emplace_back(best_score, *best);
                best = std::move(extension);
                best_score = score;
            } else {
                others.emplace_back(score, std::move(extension));
            }
        }
        if (!best) throw Error("internal: prefix with no completion escaped the queue");
        for (auto& [score, prefix] : others) queue_ = queue_.push(score, std::move(prefix));
        current = std::move(*best);
    }
    return std::make_pair(ranking_(current), std::move(current));
}

}  // namespace rankenum

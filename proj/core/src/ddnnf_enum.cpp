#include "rankenum/ddnnf_enum.hpp"

#include <algorithm>

namespace rankenum {

GridEnumerator::GridEnumerator(std::vector<double> a, std::vector<double> b,
                               std::function<double(double, double)> op)
    : a_(std::move(a)), b_(std::move(b)), op_(std::move(op)) {
    if (a_.empty() || b_.empty()) throw ValidationError("grid enumeration needs non-empty arrays");
    if (!std::is_sorted(a_.begin(), a_.end(), std::greater<double>()) ||
        !std::is_sorted(b_.begin(), b_.end(), std::greater<double>()))
        throw ValidationError("grid enumeration needs nonincreasing arrays");
    queue_ = queue_.push(combined(1, 1), {1, 1});
    seen_.insert(pack(1, 1));
}

double GridEnumerator::combined(int i, int j) const {
    return op_(a_[static_cast<std::size_t>(i - 1)], b_[static_cast<std::size_t>(j - 1)]);
}

std::optional<std::pair<int, int>> GridEnumerator::next() {
    auto popped = queue_.pop_max();
    if (!popped) return std::nullopt;
    queue_ = popped->second;
    auto [i, j] = popped->first.second;
    const std::pair<int, int> neighbors[2] = {{i + 1, j}, {i, j + 1}};
    for (auto [p, q] : neighbors) {
        if (p > static_cast<int>(a_.size()) || q > static_cast<int>(b_.size())) continue;
        if (!seen_.insert(pack(p, q)).second) continue;
        queue_ = queue_.push(combined(p, q), {p, q});
    }
    return popped->first.second;
}

EnumState::EnumState(const Circuit& c, const RankingFunction& w)
    : circuit_([&] {
          ValidationReport report = validate_structural(c);
          if (!report.decomposable)
              throw ValidationError("d-DNNF enumeration requires decomposable products (gate '" +
                                    c.gate_name(report.first_nondecomposable) + "' violates)");
          if (!report.smooth)
              throw ValidationError("d-DNNF enumeration requires smooth unions (gate '" +
                                    c.gate_name(report.first_nonsmooth) + "' violates)");
          return binarize_products(c);
      }()),
      ranking_(w) {
    // The binarization pass above touched every gate and edge of the input.
    for (int i = 0; i < c.gate_count(); ++i)
        preprocess_visits_ += 1 + c.gate(i).children.size();

    // Second step: per-gate model counts.
    counts_ = count_per_gate(circuit_);
    for (int i = 0; i < circuit_.gate_count(); ++i)
        preprocess_visits_ += 1 + circuit_.gate(i).children.size();

    // Third step: one bottom-up pass builds a queue B_g per gate holding, for
    // every exit gate reachable through OR gates only, one maximal assignment
    // of that exit. Inputs seed their singleton, AND gates push the product
    // of their children's maxima, OR gates meld their children's queues in
    // constant time apiece.
    int gate_count = circuit_.gate_count();
    std::vector<PersistentMaxQueue<double, ExitEntry>> built(static_cast<std::size_t>(gate_count));
    for (int i = 0; i < gate_count; ++i) {
        const Gate& g = circuit_.gate(i);
        preprocess_visits_ += 1 + g.children.size();
        switch (g.kind) {
            case GateKind::Input: {
                auto assignment =
                    std::make_shared<const PartialAssignment>(PartialAssignment().extended(g.var, g.value));
                built[static_cast<std::size_t>(i)] =
                    built[static_cast<std::size_t>(i)].push(w(*assignment), ExitEntry{i, 1, assignment});
                break;
            }
            case GateKind::And: {
                auto m1 = built[static_cast<std::size_t>(g.children[0])].find_max();
                auto m2 = built[static_cast<std::size_t>(g.children[1])].find_max();
                auto product = std::make_shared<const PartialAssignment>(
                    join(*m1->second.assignment, *m2->second.assignment));
                built[static_cast<std::size_t>(i)] =
                    built[static_cast<std::size_t>(i)].push(w(*product), ExitEntry{i, 1, product});
                break;
            }
            case GateKind::Or: {
                auto q = built[static_cast<std::size_t>(g.children[0])];
                for (std::size_t k = 1; k < g.children.size(); ++k)
                    q = q.meld(built[static_cast<std::size_t>(g.children[k])]);
                built[static_cast<std::size_t>(i)] = std::move(q);
                break;
            }
        }
    }

    // Fourth step: inputs and OR gates adopt B_g directly; an AND gate starts
    // from its own maximum, split back into the two child assignments, as the
    // (1,1) corner of its product grid.
    gates_.resize(static_cast<std::size_t>(gate_count));
    for (int i = 0; i < gate_count; ++i) {
        const Gate& g = circuit_.gate(i);
        ++preprocess_visits_;
        GateState& state = gates_[static_cast<std::size_t>(i)];
        if (g.kind == GateKind::And) {
            auto max = built[static_cast<std::size_t>(i)].find_max();
            const PartialAssignment& tau = *max->second.assignment;
            auto tau1 = std::make_shared<const PartialAssignment>(
                tau.restricted(circuit_.var_below(g.children[0])));
            auto tau2 = std::make_shared<const PartialAssignment>(
                tau.restricted(circuit_.var_below(g.children[1])));
            state.prod_q = state.prod_q.push(max->first, ProductEntry{1, 1, tau1, tau2});
        } else {
            state.exit_q = std::move(built[static_cast<std::size_t>(i)]);
        }
    }
}

EnumState::GateCallCounters& EnumState::touch(int gate) {
    return gates_this_call_.try_emplace(gate).first->second;
}

std::uint64_t EnumState::max_queue_growth_single_gate() const {
    std::uint64_t worst = 0;
    for (const auto& [gate, counters] : gates_this_call_)
        if (counters.pushes > counters.pops)
            worst = std::max(worst, counters.pushes - counters.pops);
    return worst;
}

void EnumState::reset_call_stats() {
    stats_ = CallStats{};
    gates_this_call_.clear();
    call_had_catch_up_ = false;
}

PaPtr EnumState::get(int gate, std::uint64_t j) {
    ++stats_.gets;
    if (j < 1 || j > count(gate)) throw Error("get index out of range");
    GateState& state = gates_[static_cast<std::size_t>(gate)];
    if (state.table.size() + 1 < j) {
        // The requested rank is more than one step ahead: the referencing
        // queue entry predates this gate's first materialization (it came
        // from preprocessing). Catch up; this happens at most once per gate.
        call_had_catch_up_ = true;
        ++catch_up_events_;
    }
    while (state.table.size() < j) advance(gate);
    return state.table[static_cast<std::size_t>(j - 1)];
}

void EnumState::advance(int gate) {
    GateState& state = gates_[static_cast<std::size_t>(gate)];
    const Gate& g = circuit_.gate(gate);
    PaPtr result;

    // touch() is re-looked-up per use: recursive gets below may rehash the
    // per-call counter map.
    if (g.kind == GateKind::And) {
        auto popped = state.prod_q.pop_max();
        if (!popped) throw Error("internal: product queue drained early");
        ++stats_.pops;
        ++touch(gate).pops;
        state.prod_q = popped->second;
        const ProductEntry& entry = popped->first.second;
        result = std::make_shared<const PartialAssignment>(join(*entry.tau1, *entry.tau2));

        int g1 = g.children[0], g2 = g.children[1];
        const std::pair<std::uint64_t, std::uint64_t> neighbors[2] = {
            {entry.j1 + 1, entry.j2}, {entry.j1, entry.j2 + 1}};
        for (auto [p, q] : neighbors) {
            if (p > count(g1) || q > count(g2)) continue;
            if (!state.seen.insert({p, q}).second) continue;
            PaPtr tau1 = get(g1, p);
            PaPtr tau2 = get(g2, q);
            double priority = ranking_(join(*tau1, *tau2));
            state.prod_q = state.prod_q.push(priority, ProductEntry{p, q, tau1, tau2});
            ++stats_.pushes;
            ++touch(gate).pushes;
        }
    } else {
        auto popped = state.exit_q.pop_max();
        if (!popped) throw Error("internal: exit queue drained early");
        ++stats_.pops;
        ++touch(gate).pops;
        state.exit_q = popped->second;
        const ExitEntry& entry = popped->first.second;
        result = entry.assignment;
        if (g.kind == GateKind::Or && entry.index + 1 <= count(entry.gate)) {
            PaPtr successor = get(entry.gate, entry.index + 1);
            state.exit_q =
                state.exit_q.push(ranking_(*successor), ExitEntry{entry.gate, entry.index + 1, successor});
            ++stats_.pushes;
            ++touch(gate).pushes;
        }
    }

    state.table.push_back(std::move(result));
}

std::optional<std::pair<double, PartialAssignment>> DdnnfEnumerator::next() {
    if (next_index_ > state_.answer_count()) return std::nullopt;
    state_.reset_call_stats();
    PaPtr assignment = state_.get(state_.circuit().output(), next_index_++);
    return std::make_pair(state_.ranking()(*assignment), *assignment);
}

}  // namespace rankenum

#include "rankenum/ranking.hpp"

#include <algorithm>
#include <charconv>

#include "rankenum/detail/lines.hpp"

namespace rankenum {

RankingFunction RankingFunction::lex(const std::vector<int>& order, int domain_size, int var_count) {
    if (static_cast<int>(order.size()) != var_count)
        throw ValidationError("lex order must list every variable exactly once");
    VarMask seen = 0;
    for (int var : order) {
        if (var < 0 || var >= var_count || ((seen >> var) & 1u))
            throw ValidationError("lex order is not a permutation of the variables");
        seen |= VarMask{1} << var;
    }
    if (static_cast<double>(var_count) * std::log2(domain_size + 1.0) > 52.0)
        throw GuardError("lex encoding does not fit exactly in a double");

    WeightTable table;
    double scale = 1.0;
    for (int i = var_count - 1; i >= 0; --i) {
        for (int value = 0; value < domain_size; ++value)
            table.set(order[static_cast<std::size_t>(i)], value, static_cast<double>(value) * scale);
        scale *= static_cast<double>(domain_size + 1);
    }
    return RankingFunction(Aggregator::Lex, std::move(table));
}

RankingFunction parse_ranking(std::string_view text, const Domain& domain, const VarSet& vars) {
    detail::LineReader reader(text);

    detail::Tokens header = reader.expect_line("ranking header");
    if (header.words.size() != 2 || header.words[0] != "ranking" || header.words[1] != "v1")
        throw ParseError(header.line, "expected 'ranking v1'");

    detail::Tokens agg_line = reader.expect_line("agg declaration");
    if (agg_line.words.size() != 2 || agg_line.words[0] != "agg")
        throw ParseError(agg_line.line, "expected 'agg sum|max|prod|lex'");
    const std::string& agg = agg_line.words[1];

    WeightTable table;
    std::optional<std::vector<int>> order;
    while (auto tokens = reader.next_line()) {
        const auto& words = tokens->words;
        int line = tokens->line;
        if (words[0] == "w") {
            if (agg == "lex")
                throw ParseError(line, "lex rankings derive weights; 'w' lines are not allowed");
            if (words.size() != 4) throw ParseError(line, "expected 'w <var> <value> <number>'");
            auto var = vars.find(words[1]);
            if (!var) throw ParseError(line, "unknown variable '" + words[1] + "'");
            auto value = domain.find(words[2]);
            if (!value) throw ParseError(line, "unknown value '" + words[2] + "'");
            double weight = 0.0;
            const char* first = words[3].data();
            const char* last = first + words[3].size();
            auto [ptr, ec] = std::from_chars(first, last, weight);
            if (ec != std::errc{} || ptr != last)
                throw ParseError(line, "bad weight '" + words[3] + "'");
            table.set(*var, *value, weight);
        } else if (words[0] == "order") {
            if (agg != "lex") throw ParseError(line, "'order' is only valid for lex rankings");
            if (order) throw ParseError(line, "duplicate order line");
            std::vector<int> ids;
            for (std::size_t i = 1; i < words.size(); ++i) {
                auto var = vars.find(words[i]);
                if (!var) throw ParseError(line, "unknown variable '" + words[i] + "'");
                ids.push_back(*var);
            }
            order = std::move(ids);
        } else {
            throw ParseError(line, "unexpected line '" + words[0] + "'");
        }
    }

    if (agg == "sum") return RankingFunction::sum(std::move(table));
    if (agg == "max") return RankingFunction::max(std::move(table));
    if (agg == "prod") return RankingFunction::prod(std::move(table));
    if (agg == "lex") {
        if (!order) throw ParseError(agg_line.line, "lex ranking needs an 'order' line");
        return RankingFunction::lex(*order, domain.size(), vars.size());
    }
    throw ParseError(agg_line.line, "unknown aggregator '" + agg + "'");
}

namespace {

/// All partial assignments with support inside `mask`, in odometer order
/// (undefined slots first). The first element is always the empty assignment.
std::vector<PartialAssignment> partials_within(int domain_size, VarMask mask) {
    std::vector<int> vars;
    for (VarMask m = mask; m != 0; m &= m - 1) vars.push_back(__builtin_ctz(m));
    std::vector<PartialAssignment> out;
    std::vector<int> state(vars.size(), -1);  // -1 = undefined
    while (true) {
        PartialAssignment a;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (state[i] >= 0) a.set(vars[i], state[i]);
        out.push_back(a);
        std::size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (state[i] + 1 < domain_size) {
                ++state[i];
                break;
            }
            state[i] = -1;
        }
        if (i == vars.size()) break;
    }
    return out;
}

}  // namespace

std::optional<MonotoneCounterexample> check_subset_monotone_bruteforce(
    const std::function<double(const PartialAssignment&)>& w, int domain_size, int var_count,
    std::uint64_t guard) {
    if (var_count > kMaxVars) throw GuardError("too many variables");
    double space = std::pow(static_cast<double>(domain_size + 1), var_count);
    if (space > static_cast<double>(guard))
        throw GuardError("partial-assignment space (|D|+1)^n exceeds the brute-force limit of " +
                         std::to_string(guard));

    VarMask full = static_cast<VarMask>((1u << var_count) - 1u);
    for (VarMask y = 0; y <= full; ++y) {
        std::vector<PartialAssignment> taus = partials_within(domain_size, y);
        std::vector<double> base(taus.size());
        for (std::size_t i = 0; i < taus.size(); ++i) base[i] = w(taus[i]);

        std::vector<std::size_t> idx(taus.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return base[a] < base[b]; });

        for (const PartialAssignment& sigma : partials_within(domain_size, full & ~y)) {
            double prev_base = 0.0, prev_ext = 0.0;
            bool have_prev = false;
            for (std::size_t k = 0; k < idx.size(); ++k) {
                const PartialAssignment& tau = taus[idx[k]];
                double b = base[idx[k]];
                double ext = w(join(sigma, tau));
                if (have_prev) {
                    bool tie_broken = prev_base == b && ext != prev_ext;
                    bool order_broken = prev_ext > ext;
                    if (tie_broken || order_broken) {
                        MonotoneCounterexample cex;
                        cex.support_y = y;
                        cex.sigma = sigma;
                        if (prev_ext > ext) {
                            cex.t1 = taus[idx[k - 1]];
                            cex.t2 = tau;
                        } else {  // tie in base scores, extension increased
                            cex.t1 = tau;
                            cex.t2 = taus[idx[k - 1]];
                        }
                        return cex;
                    }
                }
                prev_base = b;
                prev_ext = ext;
                have_prev = true;
            }
        }
    }
    return std::nullopt;
}

}  // namespace rankenum

// Acceptance suite: exercises every shipped guarantee end to end and prints
// one PASS/FAIL line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "support/generators.hpp"

using namespace rankenum;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& message) {
        if (pass) detail = message;
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/rankenum_acceptance_") + name;
}

// --- criteria 1 + 2 + 5 + 7 ---------------------------------------------------

void check_dnnf_invariants(const Circuit& c, const RankingFunction& w,
                           const RankedAnswerList& models, Outcome& out) {
    int n = c.vars().size();
    int d = c.domain().size();
    DnnfEnumerator e(c, w);
    std::vector<PartialAssignment> produced;
    std::uint64_t outputs = 0;
    while (auto item = e.next()) {
        produced.push_back(item->second);
        ++outputs;
        auto queue = e.queue_snapshot();

        if (queue.size() > static_cast<std::size_t>(n * d) * (outputs + 1))
            out.fail("queue size bound n*|D|*(K+1) violated");

        for (const auto& [score, prefix] : queue)
            for (const PartialAssignment& emitted : produced)
                if (compatible(prefix, emitted))
                    out.fail("queued prefix compatible with an emitted answer");

        for (std::size_t i = 0; i < queue.size(); ++i)
            for (std::size_t j = i + 1; j < queue.size(); ++j)
                if (compatible(queue[i].second, queue[j].second))
                    out.fail("two queued prefixes are compatible");

        for (const RankedAnswer& m : models) {
            bool already = false;
            for (const PartialAssignment& p : produced)
                if (p == m.assignment) {
                    already = true;
                    break;
                }
            if (already) continue;
            int hits = 0;
            for (const auto& [score, prefix] : queue)
                if (m.assignment.restricted(prefix.support()) == prefix) ++hits;
            if (hits != 1) out.fail("pending model not covered by exactly one queued prefix");
        }
        if (!out.pass) return;
    }
}

void run_criterion_1_and_5(Outcome& c1, Outcome& c5) {
    std::mt19937 rng(90001);
    std::uint64_t answers = 0;
    for (int round = 0; round < 1000; ++round) {
        int n = 1 + round % 3;
        int d = 2 + (round / 3) % 3;
        Circuit c = random_ddnnf(rng, n, d, 40);
        if (!check_deterministic_bruteforce(c).deterministic) {
            c1.fail("generated circuit failed the determinism check");
            return;
        }
        RankingFunction w = random_sum_or_max(rng, n, d);
        RankedAnswerList expected = brute_force_circuit(c, w);
        RankedAnswerList got = collect_ddnnf(c, w);
        if (auto divergence = ranked_equal(expected, got)) {
            c1.fail("instance " + std::to_string(round) + ": " + divergence->message);
            return;
        }
        answers += got.size();
        std::uint64_t count = count_per_gate(c)[static_cast<std::size_t>(c.output())];
        if (count != expected.size())
            c5.fail("count mismatch on d-DNNF instance " + std::to_string(round));
    }
    c1.detail = std::to_string(answers) + " answers checked";
}

void run_criterion_2_and_7(Outcome& c2, Outcome& c7) {
    std::mt19937 rng(90002);
    std::uint64_t answers = 0;
    for (int round = 0; round < 1000; ++round) {
        int n = 1 + round % 3;
        int d = 2 + (round / 3) % 3;
        Circuit c = random_dnnf(rng, n, d, 40);
        RankingFunction w = random_sum_or_max(rng, n, d);
        RankedAnswerList expected = brute_force_circuit(c, w);
        RankedAnswerList got = collect_dnnf(c, w);
        if (auto divergence = ranked_equal(expected, got)) {
            c2.fail("instance " + std::to_string(round) + ": " + divergence->message);
            return;
        }
        answers += got.size();
        if (c7.pass) check_dnnf_invariants(c, w, expected, c7);
    }
    c2.detail = std::to_string(answers) + " answers checked";
}

// --- criterion 3 ---------------------------------------------------------------

void run_criterion_3(Outcome& out) {
    std::mt19937 rng(90003);
    for (int round = 0; round < 500; ++round) {
        int n1 = 1 + static_cast<int>(rng() % 100);
        int n2 = 1 + static_cast<int>(rng() % 100);
        std::vector<double> a(static_cast<std::size_t>(n1)), b(static_cast<std::size_t>(n2));
        std::uniform_int_distribution<int> weight(-50, 50);
        for (auto& x : a) x = weight(rng);
        for (auto& x : b) x = weight(rng);
        std::sort(a.begin(), a.end(), std::greater<double>());
        std::sort(b.begin(), b.end(), std::greater<double>());
        bool use_max = round % 2 == 0;
        auto op = [use_max](double x, double y) { return use_max ? std::max(x, y) : x + y; };

        GridEnumerator g(a, b, op);
        std::set<std::pair<int, int>> seen;
        double prev = 0.0;
        bool first = true;
        std::uint64_t emitted = 0;
        while (auto p = g.next()) {
            ++emitted;
            if (g.queue_size() > emitted + 1) {
                out.fail("frontier exceeded K+1 on instance " + std::to_string(round));
                return;
            }
            if (!seen.insert(*p).second) {
                out.fail("pair emitted twice on instance " + std::to_string(round));
                return;
            }
            double score = op(a[static_cast<std::size_t>(p->first - 1)],
                              b[static_cast<std::size_t>(p->second - 1)]);
            if (!first && score > prev) {
                out.fail("scores increased on instance " + std::to_string(round));
                return;
            }
            prev = score;
            first = false;
        }
        if (seen.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2)) {
            out.fail("grid not fully enumerated on instance " + std::to_string(round));
            return;
        }
    }
}

// --- criteria 4 + 5 -------------------------------------------------------------

void run_criterion_4_and_5(Outcome& c4, Outcome& c5) {
    std::mt19937 rng(90004);
    Bdta a_leaf = trim(make_a_leaf());
    Bdta distinct = trim(make_distinct_leaves());
    for (int round = 0; round < 200; ++round) {
        LabeledTree t = random_full_tree(rng, 31);
        for (const Bdta* a : {&a_leaf, &distinct}) {
            std::set<std::vector<int>> accepted;
            detail::for_each_total_assignment(t.node_count(), a->vars().size(),
                                              [&](const PartialAssignment& alpha) {
                if (run(*a, t, alpha)) {
                    std::vector<int> key;
                    for (int var = 0; var < a->vars().size(); ++var) key.push_back(alpha.value(var));
                    accepted.insert(key);
                }
            });

            bool compiled = true;
            ProvenanceResult r = [&]() -> ProvenanceResult {
                try {
                    return provenance_circuit(*a, t);
                } catch (const EmptyAnswerSetError&) {
                    compiled = false;
                    return provenance_circuit(a_leaf, make_balanced_tree(2));
                }
            }();
            if (!compiled) {
                if (!accepted.empty())
                    c4.fail("compiler reported empty answers on a non-empty instance");
                continue;
            }

            if (!validate_structural(r.circuit).ok())
                c4.fail("compiled circuit not smooth/decomposable, instance " + std::to_string(round));
            if (!check_deterministic_bruteforce(r.circuit).deterministic)
                c4.fail("compiled circuit not deterministic, instance " + std::to_string(round));

            std::set<std::vector<int>> captured;
            for (const PartialAssignment& m : completed_rel(r.circuit, r.circuit.output())) {
                std::vector<int> key;
                for (int var = 0; var < a->vars().size(); ++var) key.push_back(m.value(var));
                captured.insert(key);
            }
            if (captured != accepted)
                c4.fail("relation mismatch on instance " + std::to_string(round));

            std::uint64_t count = count_per_gate(r.circuit)[static_cast<std::size_t>(r.circuit.output())];
            if (count != accepted.size())
                c5.fail("count mismatch on compiled instance " + std::to_string(round));
            if (!c4.pass) return;
        }
    }
}

// --- criterion 6 ----------------------------------------------------------------

struct DelayPoint {
    std::size_t edges;
    std::uint64_t preprocess_visits;
    std::uint64_t max_pops;
    std::uint64_t max_gets;
};

DelayPoint measure_ddnnf(const Circuit& c, const RankingFunction& w, std::uint64_t answer_cap) {
    DdnnfEnumerator e(c, w);
    DelayPoint point{c.edge_count(), e.state().preprocess_visits(), 0, 0};
    std::uint64_t emitted = 0;
    while (emitted < answer_cap) {
        auto item = e.next();
        if (!item) break;
        ++emitted;
        point.max_pops = std::max(point.max_pops, e.state().call_stats().pops);
        point.max_gets = std::max(point.max_gets, e.state().call_stats().gets);
    }
    return point;
}

void run_criterion_6(Outcome& out) {
    std::vector<DelayPoint> fit_points;

    // OR-chain family: 2 answers each, whatever the chain length.
    WeightTable chain_table;
    chain_table.set(0, 0, 2.0);
    RankingFunction chain_ranking = RankingFunction::sum(chain_table);
    std::vector<DelayPoint> chain_points;
    for (int gates : {1000, 10000, 100000}) {
        Circuit chain = make_or_chain(gates);
        chain_points.push_back(measure_ddnnf(chain, chain_ranking, 64));
        fit_points.push_back(chain_points.back());
    }

    // Balanced provenance family, 2^k - 1 nodes for k = 8..15.
    Bdta a_leaf = trim(make_a_leaf());
    std::vector<DelayPoint> tree_points;
    std::mt19937 rng(90006);
    for (int depth = 8; depth <= 15; ++depth) {
        LabeledTree t = make_balanced_tree(depth);
        ProvenanceResult r = provenance_circuit(a_leaf, t);
        WeightTable table;
        std::uniform_int_distribution<int> weight(-9, 9);
        for (int node = 0; node < t.node_count(); ++node)
            table.set(0, node, static_cast<double>(weight(rng)));
        RankingFunction w = RankingFunction::sum(table);
        tree_points.push_back(measure_ddnnf(r.circuit, w, 64));
        fit_points.push_back(tree_points.back());
    }

    auto variation = [](const std::vector<DelayPoint>& points, auto member) {
        std::uint64_t lo = points.front().*member, hi = points.front().*member;
        for (const DelayPoint& p : points) {
            lo = std::min(lo, p.*member);
            hi = std::max(hi, p.*member);
        }
        return hi - lo;
    };
    if (variation(chain_points, &DelayPoint::max_pops) > 2 ||
        variation(chain_points, &DelayPoint::max_gets) > 2)
        out.fail("per-answer work varies with chain length");
    if (variation(tree_points, &DelayPoint::max_pops) > 2 ||
        variation(tree_points, &DelayPoint::max_gets) > 2)
        out.fail("per-answer work varies with tree size");

    // Preprocessing linearity: within each instance family, the visit count
    // lies on a ray through the origin (R^2 >= 0.999); a single constant, the
    // larger of the two fitted slopes, bounds every instance measured.
    auto fit_ray = [](const std::vector<DelayPoint>& points) {
        double sxy = 0.0, sxx = 0.0, sy = 0.0;
        for (const DelayPoint& p : points) {
            sxy += static_cast<double>(p.edges) * static_cast<double>(p.preprocess_visits);
            sxx += static_cast<double>(p.edges) * static_cast<double>(p.edges);
            sy += static_cast<double>(p.preprocess_visits);
        }
        double slope = sxy / sxx;
        double mean = sy / static_cast<double>(points.size());
        double ss_res = 0.0, ss_tot = 0.0;
        for (const DelayPoint& p : points) {
            double predicted = slope * static_cast<double>(p.edges);
            double y = static_cast<double>(p.preprocess_visits);
            ss_res += (y - predicted) * (y - predicted);
            ss_tot += (y - mean) * (y - mean);
        }
        return std::make_pair(slope, 1.0 - ss_res / ss_tot);
    };
    auto [chain_c, chain_r2] = fit_ray(chain_points);
    auto [tree_c, tree_r2] = fit_ray(tree_points);
    double c = std::max(chain_c, tree_c);
    std::ostringstream summary;
    summary << "visits/edge: chains " << chain_c << " (R^2 " << chain_r2 << "), trees " << tree_c
            << " (R^2 " << tree_r2 << "), bound " << c;
    if (chain_r2 < 0.999 || tree_r2 < 0.999)
        out.fail("preprocessing linear fit too loose: " + summary.str());
    for (const DelayPoint& p : fit_points)
        if (static_cast<double>(p.preprocess_visits) > 1.05 * c * static_cast<double>(p.edges))
            out.fail("a preprocessing point exceeds the fitted constant: " + summary.str());
    if (out.pass) out.detail = summary.str();
}

// --- criterion 8 -----------------------------------------------------------------

void run_criterion_8(Outcome& out) {
    std::mt19937 rng(90008);
    for (int round = 0; round < 30 && out.pass; ++round) {
        int n = 2 + static_cast<int>(rng() % 2);
        int d = 2 + static_cast<int>(rng() % 2);
        WeightTable table = random_weight_table(rng, n, d);
        RankingFunction sum = RankingFunction::sum(table);
        if (check_subset_monotone_bruteforce([&](const PartialAssignment& a) { return sum(a); }, d, n))
            out.fail("sum ranking flagged as non-monotone");
        RankingFunction mx = RankingFunction::max(table);
        if (check_subset_monotone_bruteforce([&](const PartialAssignment& a) { return mx(a); }, d, n))
            out.fail("max ranking flagged as non-monotone");
        WeightTable nonneg = random_weight_table(rng, n, d, 0, 9);
        RankingFunction prod = RankingFunction::prod(nonneg);
        if (check_subset_monotone_bruteforce([&](const PartialAssignment& a) { return prod(a); }, d, n))
            out.fail("prod ranking flagged as non-monotone");
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        RankingFunction lex = RankingFunction::lex(order, d, n);
        if (check_subset_monotone_bruteforce([&](const PartialAssignment& a) { return lex(a); }, d, n))
            out.fail("lex ranking flagged as non-monotone");
    }

    // The 0/50/100/100 two-variable table is subset-monotone.
    auto step_table = [](const PartialAssignment& a) {
        bool y = a.defined(0), z = a.defined(1);
        if (y) return 100.0;
        if (z) return 50.0;
        return 0.0;
    };
    if (check_subset_monotone_bruteforce(step_table, 1, 2))
        out.fail("the 0/50/100/100 table was flagged as non-monotone");

    // The crafted violating table yields a counterexample with sigma = [y->a].
    auto violating = [](const PartialAssignment& a) {
        bool x = a.defined(0), y = a.defined(1);
        if (x && !y) return a.value(0) == 0 ? 1.0 : 0.0;
        if (x && y && a.value(1) == 0) return a.value(0) == 0 ? 0.0 : 1.0;
        return 0.0;
    };
    auto cex = check_subset_monotone_bruteforce(violating, 2, 2);
    if (!cex) {
        out.fail("the crafted violating table was not refuted");
        return;
    }
    if (!(violating(cex->t1) <= violating(cex->t2)) ||
        !(violating(join(cex->sigma, cex->t1)) > violating(join(cex->sigma, cex->t2))))
        out.fail("reported counterexample is not a violation");
    PartialAssignment y_to_a;
    y_to_a.set(1, 0);
    if (!(cex->sigma == y_to_a)) out.fail("expected the sigma = [y->a] counterexample");
}

// --- criterion 9 ------------------------------------------------------------------

void run_criterion_9(Outcome& out) {
    // Top answer of the big balanced instance through the command line.
    LabeledTree big = make_balanced_tree(15);
    int unique_leaf = -1;
    for (int id = 0; id < big.node_count() && unique_leaf < 0; ++id)
        if (big.is_leaf(id) && id % 37 == 5) unique_leaf = id;
    if (unique_leaf < 0) unique_leaf = big.node_count() - 1;

    std::string tree_path = temp_path("big.tree");
    std::ofstream(tree_path) << format_tree(big);
    std::string ranking_path = temp_path("big.rk");
    std::ofstream(ranking_path) << "ranking v1\nagg sum\nw x n" << unique_leaf << " 100\n";
    std::string automaton_path = temp_path("a_leaf.bdta");
    std::ofstream(automaton_path) << data_file("a_leaf.bdta");

    std::string command = std::string(RANKENUM_CLI_PATH) + " mso-topk --tree " + tree_path +
                          " --automaton " + automaton_path + " --ranking " + ranking_path + " -k 1";
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) {
        out.fail("could not launch the command-line tool");
        return;
    }
    std::string cli_out;
    char buffer[4096];
    std::size_t n;
    while ((n = ::fread(buffer, 1, sizeof buffer, pipe)) > 0) cli_out.append(buffer, n);
    int status = ::pclose(pipe);
    std::string expected_line = "100\tx=n" + std::to_string(unique_leaf) + "\n";
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        out.fail("mso-topk exited nonzero on the 2^15-1 instance");
    else if (cli_out != expected_line)
        out.fail("mso-topk top answer was '" + cli_out + "', expected '" + expected_line + "'");

    // Full enumeration against the brute-force pipeline on trees up to 255
    // nodes (both bundled automata; the two-variable one up to 255^2 runs).
    std::mt19937 rng(90009);
    Bdta a_leaf = trim(make_a_leaf());
    Bdta distinct = trim(make_distinct_leaves());
    std::vector<LabeledTree> trees;
    trees.push_back(make_balanced_tree(7));  // 127 nodes
    trees.push_back(make_balanced_tree(8));  // 255 nodes
    for (int round = 0; round < 12; ++round) trees.push_back(random_full_tree(rng, 255));

    for (std::size_t i = 0; i < trees.size() && out.pass; ++i) {
        const LabeledTree& t = trees[i];
        for (const Bdta* a : {&a_leaf, &distinct}) {
            WeightTable table = random_weight_table(rng, a->vars().size(), t.node_count());
            RankingFunction w = RankingFunction::sum(table);
            RankedAnswerList expected = brute_force_mso(t, *a, w);
            bool compiled = true;
            ProvenanceResult r = [&]() -> ProvenanceResult {
                try {
                    return provenance_circuit(*a, t);
                } catch (const EmptyAnswerSetError&) {
                    compiled = false;
                    return provenance_circuit(a_leaf, make_balanced_tree(2));
                }
            }();
            if (!compiled) {
                if (!expected.empty()) out.fail("empty answer set on a non-empty instance");
                continue;
            }
            RankedAnswerList got = collect_ddnnf(r.circuit, w);
            if (auto divergence = ranked_equal(expected, got)) {
                out.fail("tree " + std::to_string(i) + ": " + divergence->message);
                break;
            }
        }
    }
}

struct Criterion {
    int id;
    std::string name;
};

}  // namespace

int main() {
    Outcome o1, o2, o3, o4, o5, o6, o7, o8, o9;
    std::vector<std::pair<Criterion, Outcome*>> table{
        {{1, "ranked d-DNNF enumeration matches the brute-force oracle (1000 instances)"}, &o1},
        {{2, "ranked DNNF enumeration matches the oracle, duplicates included (1000 instances)"}, &o2},
        {{3, "grid enumeration: complete, ordered, frontier within K+1 (500 instances)"}, &o3},
        {{4, "provenance compilation: relation, structure, determinism (200 trees x 2 automata)"},
         &o4},
        {{5, "per-gate counting agrees with the oracle on criteria 1 and 4 instances"}, &o5},
        {{6, "delay surrogate: constant per-answer work, linear preprocessing"}, &o6},
        {{7, "DNNF loop invariants hold at every output boundary (criterion-2 instances)"}, &o7},
        {{8, "subset-monotonicity fixtures (built-ins pass, crafted table refuted)"}, &o8},
        {{9, "end-to-end pipeline: top answer at 2^15-1 nodes, full runs up to 255 nodes"}, &o9},
    };

    std::vector<double> elapsed(10, 0.0);
    auto timed = [&](int id, auto&& fn) {
        auto start = std::chrono::steady_clock::now();
        fn();
        elapsed[static_cast<std::size_t>(id)] += seconds_since(start);
    };

    timed(1, [&] { run_criterion_1_and_5(o1, o5); });
    timed(2, [&] { run_criterion_2_and_7(o2, o7); });
    timed(3, [&] { run_criterion_3(o3); });
    timed(4, [&] { run_criterion_4_and_5(o4, o5); });
    timed(6, [&] { run_criterion_6(o6); });
    timed(8, [&] { run_criterion_8(o8); });
    timed(9, [&] { run_criterion_9(o9); });
    elapsed[5] = elapsed[1] + elapsed[4];
    elapsed[7] = elapsed[2];

    int failures = 0;
    for (auto& [criterion, outcome] : table) {
        std::ostringstream line;
        line << (outcome->pass ? "PASS" : "FAIL") << " criterion " << criterion.id << ": "
             << criterion.name;
        if (!outcome->detail.empty()) line << " [" << outcome->detail << "]";
        char timing[32];
        std::snprintf(timing, sizeof timing, " (%.1fs)", elapsed[static_cast<std::size_t>(criterion.id)]);
        line << timing;
        std::cout << line.str() << '\n';
        if (!outcome->pass) ++failures;
    }
    return failures;
}

#include <doctest.h>

#include <map>
#include <random>

#include "support/generators.hpp"

using namespace rankenum;
using namespace testsupport;

namespace {

PartialAssignment pa(std::initializer_list<std::pair<int, int>> pairs) {
    PartialAssignment a;
    for (auto [var, value] : pairs) a.set(var, value);
    return a;
}

/// Arbitrary ranking given by an explicit table over partial assignments,
/// defaulting to 0: lets tests encode rankings that are not weight-based.
struct LookupRanking {
    std::map<std::pair<VarMask, std::vector<int>>, double> table;

    void set(const PartialAssignment& a, double score) { table[key(a)] = score; }
    double operator()(const PartialAssignment& a) const {
        auto it = table.find(key(a));
        return it == table.end() ? 0.0 : it->second;
    }

    static std::pair<VarMask, std::vector<int>> key(const PartialAssignment& a) {
        std::vector<int> values;
        for (VarMask m = a.support(); m != 0; m &= m - 1)
            values.push_back(a.value(__builtin_ctz(m)));
        return {a.support(), values};
    }
};

}  // namespace

TEST_CASE("Score orders bottom below every finite value and rejects NaN") {
    CHECK(Score::bottom() < Score::of(-1.0e300));
    CHECK(Score::of(1.0) < Score::of(2.0));
    CHECK(Score::bottom() == Score::bottom());
    CHECK_FALSE(Score::bottom() < Score::bottom());
    CHECK_THROWS_AS(Score::of(std::nan("")), ValidationError);
}

TEST_CASE("score aggregators") {
    WeightTable t;
    t.set(0, 0, 3.0);  // x=a
    t.set(1, 1, 2.0);  // y=b

    SUBCASE("sum") {
        RankingFunction w = RankingFunction::sum(t);
        CHECK(w(pa({{0, 0}, {1, 1}})) == 5.0);
        CHECK(w(PartialAssignment()) == 0.0);
        CHECK(w(pa({{1, 0}})) == 0.0);  // unlisted pairs weigh 0
    }
    SUBCASE("max") {
        RankingFunction w = RankingFunction::max(t);
        CHECK(w(pa({{0, 0}, {1, 1}})) == 3.0);
        CHECK(w(PartialAssignment()) == kMaxEmptyScore);
    }
    SUBCASE("prod") {
        WeightTable p;
        p.set(0, 0, 3.0);
        p.set(1, 1, 2.0);
        RankingFunction w = RankingFunction::prod(p);
        CHECK(w(pa({{0, 0}, {1, 1}})) == 6.0);
        CHECK(w(PartialAssignment()) == 1.0);
    }
    SUBCASE("prod rejects negative weights") {
        WeightTable p;
        p.set(0, 0, -1.0);
        CHECK_THROWS_AS(RankingFunction::prod(p), ValidationError);
    }
}

TEST_CASE("a four-entry lookup ranking scores exactly") {
    // Domain {a}, variables {y, z}: 0 / 50 / 100 / 100.
    LookupRanking w;
    w.set(PartialAssignment(), 0.0);
    w.set(pa({{1, 0}}), 50.0);           // z=a
    w.set(pa({{0, 0}}), 100.0);          // y=a
    w.set(pa({{0, 0}, {1, 0}}), 100.0);  // y=a, z=a
    CHECK(w(PartialAssignment()) == 0.0);
    CHECK(w(pa({{1, 0}})) == 50.0);
    CHECK(w(pa({{0, 0}})) == 100.0);
    CHECK(w(pa({{0, 0}, {1, 0}})) == 100.0);
}

TEST_CASE("compatible") {
    CHECK(compatible(pa({{0, 0}}), pa({{1, 1}})));
    CHECK_FALSE(compatible(pa({{0, 0}}), pa({{0, 1}})));
    CHECK(compatible(pa({{0, 0}}), pa({{0, 0}, {1, 1}})));
}

TEST_CASE("join") {
    CHECK(join(pa({{0, 0}}), pa({{1, 1}})) == pa({{0, 0}, {1, 1}}));
    PartialAssignment t = pa({{0, 1}});
    CHECK(join(t, PartialAssignment()) == t);
    CHECK(join(pa({{0, 0}, {1, 1}}), pa({{0, 0}})) == pa({{0, 0}, {1, 1}}));
    CHECK_THROWS_AS(join(pa({{0, 0}}), pa({{0, 1}})), ValidationError);
}

TEST_CASE("join is associative and commutative on disjoint supports") {
    std::mt19937 rng(7101);
    std::uniform_int_distribution<int> value(0, 3);
    for (int round = 0; round < 200; ++round) {
        // Three assignments over disjoint random variable blocks.
        PartialAssignment parts[3];
        for (int var = 0; var < 6; ++var) {
            int owner = static_cast<int>(rng() % 4);
            if (owner < 3) parts[owner].set(var, value(rng));
        }
        const auto &a = parts[0], &b = parts[1], &c = parts[2];
        CHECK(join(a, b) == join(b, a));
        CHECK(join(join(a, b), c) == join(a, join(b, c)));
    }
}

TEST_CASE("built-in rankings are subset-monotone (exhaustive, small spaces)") {
    std::mt19937 rng(7102);
    for (int round = 0; round < 10; ++round) {
        int n = 2 + static_cast<int>(rng() % 2);
        int d = 2 + static_cast<int>(rng() % 2);
        WeightTable t = random_weight_table(rng, n, d);

        RankingFunction sum = RankingFunction::sum(t);
        CHECK_FALSE(check_subset_monotone_bruteforce(
            [&](const PartialAssignment& a) { return sum(a); }, d, n));

        RankingFunction mx = RankingFunction::max(t);
        CHECK_FALSE(check_subset_monotone_bruteforce(
            [&](const PartialAssignment& a) { return mx(a); }, d, n));

        WeightTable nonneg = random_weight_table(rng, n, d, 0, 9);
        RankingFunction pr = RankingFunction::prod(nonneg);
        CHECK_FALSE(check_subset_monotone_bruteforce(
            [&](const PartialAssignment& a) { return pr(a); }, d, n));

        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        RankingFunction lex = RankingFunction::lex(order, d, n);
        CHECK_FALSE(check_subset_monotone_bruteforce(
            [&](const PartialAssignment& a) { return lex(a); }, d, n));
    }
}

TEST_CASE("the 0/50/100/100 lookup table is subset-monotone") {
    LookupRanking w;
    w.set(pa({{1, 0}}), 50.0);
    w.set(pa({{0, 0}}), 100.0);
    w.set(pa({{0, 0}, {1, 0}}), 100.0);
    CHECK_FALSE(check_subset_monotone_bruteforce(
        [&](const PartialAssignment& a) { return w(a); }, 1, 2));
}

TEST_CASE("a crafted non-monotone lookup ranking is refuted") {
    // w(x=a)=1, w(x=b)=0, w(x=a,y=a)=0, w(x=b,y=a)=1, everything else 0.
    LookupRanking w;
    w.set(pa({{0, 0}}), 1.0);
    w.set(pa({{0, 1}}), 0.0);
    w.set(pa({{0, 0}, {1, 0}}), 0.0);
    w.set(pa({{0, 1}, {1, 0}}), 1.0);
    auto cex = check_subset_monotone_bruteforce(
        [&](const PartialAssignment& a) { return w(a); }, 2, 2);
    REQUIRE(cex.has_value());
    // The counterexample must be a genuine violation...
    CHECK(w(cex->t1) <= w(cex->t2));
    CHECK(w(join(cex->sigma, cex->t1)) > w(join(cex->sigma, cex->t2)));
    // ...and the documented scan order finds it with sigma = [y -> a].
    CHECK(cex->sigma == pa({{1, 0}}));
}

TEST_CASE("monotonicity checker guard") {
    CHECK_THROWS_AS(check_subset_monotone_bruteforce(
                        [](const PartialAssignment&) { return 0.0; }, 100, 3),
                    GuardError);
}

TEST_CASE("maximal products of maximal factors (disjoint relations)") {
    std::mt19937 rng(7103);
    std::uniform_int_distribution<int> value(0, 2);
    for (int round = 0; round < 100; ++round) {
        RankingFunction w = random_sum_or_max(rng, 4, 3);
        // R over {x0, x1}, S over {x2, x3}.
        std::vector<PartialAssignment> r, s;
        for (int i = 0; i < 5; ++i) r.push_back(pa({{0, value(rng)}, {1, value(rng)}}));
        for (int i = 0; i < 5; ++i) s.push_back(pa({{2, value(rng)}, {3, value(rng)}}));
        auto argmax = [&](const std::vector<PartialAssignment>& list) {
            const PartialAssignment* best = &list.front();
            for (const auto& a : list)
                if (w(a) > w(*best)) best = &a;
            return *best;
        };
        double best_product = w(join(argmax(r), argmax(s)));
        for (const auto& a : r)
            for (const auto& b : s) CHECK(w(join(a, b)) <= best_product);
    }
}

TEST_CASE("restriction to the support does not change the score") {
    RankingFunction w = c1_ranking();
    PartialAssignment t = pa({{0, 0}});
    CHECK(w(t.restricted(t.support())) == w(t));
}

TEST_CASE("lex ranking") {
    SUBCASE("orders assignments lexicographically along the variable order") {
        int d = 3, n = 2;
        RankingFunction w = RankingFunction::lex({1, 0}, d, n);  // x1 dominates
        std::vector<PartialAssignment> all;
        detail::for_each_total_assignment(d, n,
                                          [&](const PartialAssignment& a) { all.push_back(a); });
        std::sort(all.begin(), all.end(),
                  [&](const PartialAssignment& a, const PartialAssignment& b) { return w(a) > w(b); });
        for (std::size_t i = 1; i < all.size(); ++i) {
            const PartialAssignment &hi = all[i - 1], &lo = all[i];
            bool lex_ge = hi.value(1) > lo.value(1) ||
                          (hi.value(1) == lo.value(1) && hi.value(0) >= lo.value(0));
            CHECK(lex_ge);
        }
    }
    SUBCASE("rejects orders that are not permutations") {
        CHECK_THROWS_AS(RankingFunction::lex({0, 0}, 2, 2), ValidationError);
    }
    SUBCASE("rejects encodings that no longer fit a double exactly") {
        std::vector<int> order(16);
        for (int i = 0; i < 16; ++i) order[static_cast<std::size_t>(i)] = i;
        CHECK_THROWS_AS(RankingFunction::lex(order, 16, 16), GuardError);
    }
}

TEST_CASE("parse_ranking") {
    Domain domain({"a", "b"});
    VarSet vars({"x", "y"});
    SUBCASE("reads the reference table") {
        RankingFunction w = parse_ranking(data_file("c1.rk"), domain, vars);
        CHECK(w(pa({{0, 0}, {1, 1}})) == 5.0);
    }
    SUBCASE("lex file") {
        RankingFunction w = parse_ranking("ranking v1\nagg lex\norder y x\n", domain, vars);
        CHECK(w(pa({{1, 1}})) > w(pa({{0, 1}})));
    }
    SUBCASE("rejects weight lines for lex") {
        CHECK_THROWS_AS(parse_ranking("ranking v1\nagg lex\nw x a 1\norder x y\n", domain, vars),
                        ParseError);
    }
    SUBCASE("rejects order lines for sum") {
        CHECK_THROWS_AS(parse_ranking("ranking v1\nagg sum\norder x y\n", domain, vars), ParseError);
    }
    SUBCASE("rejects bad numbers and unknown names") {
        CHECK_THROWS_AS(parse_ranking("ranking v1\nagg sum\nw x a oops\n", domain, vars), ParseError);
        CHECK_THROWS_AS(parse_ranking("ranking v1\nagg sum\nw z a 1\n", domain, vars), ParseError);
    }
}

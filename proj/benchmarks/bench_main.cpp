// Microbenchmarks for the queue primitives and both enumeration algorithms.
// The pop-delay benchmarks exist to observe whether worst-case bounds of the
// skew binomial heap show up as delay spikes in practice.

#include <benchmark/benchmark.h>

#include <random>

#include "rankenum/ddnnf_enum.hpp"
#include "rankenum/dnnf_enum.hpp"
#include "rankenum/meldable_pq.hpp"
#include "rankenum/provenance.hpp"

#include "support/generators.hpp"

using namespace rankenum;
using namespace testsupport;

namespace {

using Queue = PersistentMaxQueue<double, int>;

void BM_QueuePush(benchmark::State& state) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Queue q;
    for (auto _ : state) {
        q = q.push(dist(rng), 0);
        if (q.size() > 1u << 16) q = Queue();
    }
}
BENCHMARK(BM_QueuePush);

void BM_QueuePopAtSize(benchmark::State& state) {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Queue q;
    for (std::int64_t i = 0; i < state.range(0); ++i) q = q.push(dist(rng), 0);
    for (auto _ : state) {
        auto popped = q.pop_max();
        benchmark::DoNotOptimize(popped);
    }
}
BENCHMARK(BM_QueuePopAtSize)->Range(1 << 8, 1 << 18);

void BM_QueueMeld(benchmark::State& state) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Queue a, b;
    for (std::int64_t i = 0; i < state.range(0); ++i) {
        a = a.push(dist(rng), 0);
        b = b.push(dist(rng), 0);
    }
    for (auto _ : state) {
        Queue melded = a.meld(b);
        benchmark::DoNotOptimize(melded);
    }
}
BENCHMARK(BM_QueueMeld)->Range(1 << 8, 1 << 16);

void BM_DdnnfPreprocessOrChain(benchmark::State& state) {
    Circuit chain = make_or_chain(static_cast<int>(state.range(0)));
    WeightTable t;
    t.set(0, 0, 2.0);
    RankingFunction w = RankingFunction::sum(t);
    for (auto _ : state) {
        EnumState s(chain, w);
        benchmark::DoNotOptimize(s.answer_count());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DdnnfPreprocessOrChain)->Range(1 << 10, 1 << 17)->Complexity(benchmark::oN);

void BM_DdnnfEnumerateProvenance(benchmark::State& state) {
    Bdta a_leaf = trim(make_a_leaf());
    LabeledTree tree = make_balanced_tree(static_cast<int>(state.range(0)));
    ProvenanceResult r = provenance_circuit(a_leaf, tree);
    std::mt19937 rng(4);
    WeightTable table;
    std::uniform_int_distribution<int> weight(-9, 9);
    for (int node = 0; node < tree.node_count(); ++node)
        table.set(0, node, static_cast<double>(weight(rng)));
    RankingFunction w = RankingFunction::sum(table);
    for (auto _ : state) {
        DdnnfEnumerator e(r.circuit, w);
        std::uint64_t emitted = 0;
        while (e.next()) ++emitted;
        benchmark::DoNotOptimize(emitted);
    }
}
BENCHMARK(BM_DdnnfEnumerateProvenance)->DenseRange(8, 12, 2);

void BM_DnnfEnumerate(benchmark::State& state) {
    std::mt19937 rng(5);
    Circuit c = random_dnnf(rng, 3, 4, 40);
    RankingFunction w = random_sum_or_max(rng, 3, 4);
    for (auto _ : state) {
        DnnfEnumerator e(c, w);
        std::uint64_t emitted = 0;
        while (e.next()) ++emitted;
        benchmark::DoNotOptimize(emitted);
    }
}
BENCHMARK(BM_DnnfEnumerate);

}  // namespace

BENCHMARK_MAIN();

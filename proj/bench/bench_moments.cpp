// Serial reference kernel vs the OpenMP kernel on a uniform corpus.
//
//   bench_moments --benchmark_filter=Parallel

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <memory>

#include "seqmoments/kernel.hpp"
#include "seqmoments/rng.hpp"
#include "seqmoments/support.hpp"
#include "seqmoments/synthetic.hpp"

using namespace seqmoments;

namespace {

struct Fixture {
    SequenceCorpus corpus;
    SupportHandle support;
    std::vector<WeightedSequence> items;
};

// Cached per (sequences, n) so setup stays out of the timings.
const Fixture& fixture(std::size_t sequences, std::size_t n) {
    static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<Fixture>> cache;
    auto& slot = cache[{sequences, n}];
    if (!slot) {
        auto corpus = uniform_corpus(20, sequences, 5, 7);
        auto support = enumerate_support(corpus, n);
        slot = std::make_unique<Fixture>(Fixture{std::move(corpus), std::move(support), {}});
        Rng rng(3);
        for (const auto& e : slot->corpus.entries())
            slot->items.push_back({e.sequence.view(), static_cast<double>(e.count) * rng.uniform01()});
    }
    return *slot;
}

void BM_Serial(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(window_sums_serial(*f.support, f.items));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.items.size()));
}

void BM_Parallel(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const int workers = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(window_sums_parallel(*f.support, f.items, workers));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.items.size()));
}

void serial_args(benchmark::internal::Benchmark* b) {
    for (std::int64_t seqs : {100'000, 1'000'000})
        for (std::int64_t n : {3, 5}) b->Args({seqs, n});
}

void parallel_args(benchmark::internal::Benchmark* b) {
    const std::int64_t max_workers = omp_get_num_procs();
    for (std::int64_t seqs : {100'000, 1'000'000})
        for (std::int64_t n : {3, 5})
            for (std::int64_t w = 1; w <= max_workers; w *= 2) b->Args({seqs, n, w});
}

} // namespace

BENCHMARK(BM_Serial)->Apply(serial_args)->ArgNames({"seqs", "n"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Apply(parallel_args)->ArgNames({"seqs", "n", "workers"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

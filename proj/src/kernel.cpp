#include "seqmoments/kernel.hpp"

#include <algorithm>

#include <omp.h>

namespace seqmoments {

namespace {

struct Partial {
    std::uint32_t index;
    CompensatedSum total;
};

// Occurrences of one chunk, grouped by support index in first-seen order
// within each index.
std::vector<Partial> reduce_chunk(const SupportSet& support, std::span<const WeightedSequence> chunk) {
    const std::size_t n = support.length();
    std::vector<std::pair<std::uint32_t, double>> hits;
    for (const auto& item : chunk) {
        if (item.weight == 0.0 || item.symbols.size() < n) continue;
        for (std::size_t p = 0; p + n <= item.symbols.size(); ++p)
            if (auto idx = support.index_of(item.symbols.subspan(p, n))) hits.emplace_back(*idx, item.weight);
    }
    std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Partial> out;
    for (const auto& [idx, w] : hits) {
        if (out.empty() || out.back().index != idx) out.push_back({idx, {}});
        out.back().total.add(w);
    }
    return out;
}

} // namespace

std::vector<double> window_sums_serial(const SupportSet& support, std::span<const WeightedSequence> items) {
    const std::size_t n = support.length();
    std::vector<CompensatedSum> acc(support.size());
    for (const auto& item : items) {
        if (item.weight == 0.0 || item.symbols.size() < n) continue;
        for (std::size_t p = 0; p + n <= item.symbols.size(); ++p)
            if (auto idx = support.index_of(item.symbols.subspan(p, n))) acc[*idx].add(item.weight);
    }
    std::vector<double> out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [](const CompensatedSum& c) { return c.value(); });
    return out;
}

std::vector<double> window_sums_parallel(const SupportSet& support, std::span<const WeightedSequence> items,
                                         int workers) {
    const std::size_t chunks = (items.size() + kKernelChunk - 1) / kKernelChunk;
    std::vector<std::vector<Partial>> partials(chunks);

    const int threads = std::max(1, workers);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kKernelChunk;
        const std::size_t len = std::min(kKernelChunk, items.size() - begin);
        partials[c] = reduce_chunk(support, items.subspan(begin, len));
    }

    // Fold in chunk order; the result is independent of the thread count.
    std::vector<CompensatedSum> acc(support.size());
    for (auto& chunk : partials) {
        for (const auto& p : chunk) acc[p.index].merge(p.total);
        std::vector<Partial>().swap(chunk);
    }
    std::vector<double> out(acc.size());
    std::transform(acc.begin(), acc.end(), out.begin(), [](const CompensatedSum& c) { return c.value(); });
    return out;
}

} // namespace seqmoments

#pragma once

// Window accumulation kernels behind every moment table.
//
// Both kernels compute, for each support member z,
//     sum over items of weight(x) * #[z in x]
// with compensated summation. The parallel kernel splits the items into
// fixed-size chunks, reduces each chunk independently and then folds the
// chunk partials in chunk order, so its output does not depend on the number
// of worker threads. The serial kernel is the straightforward single pass
// kept as a reference for tests and benchmarks.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "seqmoments/corpus.hpp"
#include "seqmoments/support.hpp"

namespace seqmoments {

struct WeightedSequence {
    SymbolView symbols;
    double weight = 0.0;
};

inline constexpr std::size_t kKernelChunk = 1024;

// Neumaier summation.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            compensation += (sum - t) + x;
        else
            compensation += (x - t) + sum;
        sum = t;
    }
    void merge(const CompensatedSum& other) {
        add(other.sum);
        add(other.compensation);
    }
    double value() const { return sum + compensation; }
};

std::vector<double> window_sums_serial(const SupportSet& support, std::span<const WeightedSequence> items);
std::vector<double> window_sums_parallel(const SupportSet& support, std::span<const WeightedSequence> items,
                                         int workers);

} // namespace seqmoments

#pragma once

// Textbook Spearman with average ranks, by counting: rank(i) = 1 + #{a_j < a_i}
// + (#{a_j == a_i} - 1) / 2. Quadratic, long double, no sorting.

#include <cmath>
#include <optional>
#include <vector>

namespace oracle {

inline std::vector<long double> counting_ranks(const std::vector<double>& a) {
    std::vector<long double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        long double below = 0, equal = 0;
        for (double v : a) {
            below += v < a[i];
            equal += v == a[i];
        }
        r[i] = 1 + below + (equal - 1) / 2;
    }
    return r;
}

inline std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = counting_ranks(a);
    const auto rb = counting_ranks(b);
    const long double n = static_cast<long double>(a.size());
    long double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    long double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (va == 0 || vb == 0) return std::nullopt;
    return static_cast<double>(cov / std::sqrt(va * vb));
}

// Mean-rank metric from descending counting ranks: rank = 1 + #{m_j > m_i} + ties.
inline std::optional<double> mean_rank(const std::vector<double>& model, const std::vector<double>& gold) {
    const std::size_t n = model.size();
    std::size_t k = 0;
    long double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(gold[i] > 0)) continue;
        ++k;
        long double above = 0, equal = 0;
        for (double v : model) {
            above += v > model[i];
            equal += v == model[i];
        }
        total += (1 + above + (equal - 1) / 2) / n;
    }
    if (k == 0 || k == n) return std::nullopt;
    return static_cast<double>(1 - total / k);
}

} // namespace oracle

#pragma once

// Brute-force reference for supports and moment tables. Shares nothing with
// the library's kernels: windows are plain vectors in a std::set, and every
// moment is a full scan over every sequence with its own window comparison.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Seq = std::vector<std::uint16_t>;

struct Weighted {
    Seq seq;
    std::uint64_t count;
};

inline std::set<Seq> support(const std::vector<Weighted>& corpus, std::size_t n) {
    std::set<Seq> out;
    for (const auto& w : corpus)
        for (std::size_t p = 0; p + n <= w.seq.size(); ++p)
            out.insert(Seq(w.seq.begin() + p, w.seq.begin() + p + n));
    return out;
}

inline std::uint64_t occurrences(const Seq& z, const Seq& x) {
    std::uint64_t c = 0;
    for (std::size_t p = 0; p + z.size() <= x.size(); ++p) {
        bool match = true;
        for (std::size_t k = 0; k < z.size() && match; ++k) match = x[p + k] == z[k];
        c += match;
    }
    return c;
}

// (1/|U|) * sum over target of count * #[z in x], integer sum first.
inline std::map<Seq, double> gold(const std::set<Seq>& z_n, const std::vector<Weighted>& target, std::uint64_t u_total) {
    std::map<Seq, double> out;
    for (const auto& z : z_n) {
        std::uint64_t s = 0;
        for (const auto& x : target) s += x.count * occurrences(z, x.seq);
        out[z] = static_cast<double>(s) / static_cast<double>(u_total);
    }
    return out;
}

// (1/|U|) * sum over U of count * p(x) * #[z in x], long double accumulation.
inline std::map<Seq, double> model(const std::set<Seq>& z_n, const std::vector<Weighted>& domain,
                                   const std::map<Seq, double>& prob, std::uint64_t u_total) {
    std::map<Seq, double> out;
    for (const auto& z : z_n) {
        long double s = 0;
        for (const auto& x : domain)
            s += static_cast<long double>(x.count) * prob.at(x.seq) * occurrences(z, x.seq);
        out[z] = static_cast<double>(s) / static_cast<double>(u_total);
    }
    return out;
}

// (1/|U|) * sum over positive training items of #[z in x].
inline std::map<Seq, double> baseline(const std::set<Seq>& z_n, const std::vector<std::pair<Seq, int>>& training,
                                      std::uint64_t u_total) {
    std::map<Seq, double> out;
    for (const auto& z : z_n) {
        std::uint64_t s = 0;
        for (const auto& [x, y] : training)
            if (y == 1) s += occurrences(z, x);
        out[z] = static_cast<double>(s) / static_cast<double>(u_total);
    }
    return out;
}

inline std::set<Seq> seen(const std::set<Seq>& z_n, const std::vector<std::pair<Seq, int>>& training,
                          bool positives_only) {
    std::set<Seq> out;
    for (const auto& z : z_n)
        for (const auto& [x, y] : training)
            if ((!positives_only || y == 1) && occurrences(z, x) > 0) {
                out.insert(z);
                break;
            }
    return out;
}

} // namespace oracle

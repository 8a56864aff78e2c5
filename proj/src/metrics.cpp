#include "seqmoments/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqmoments/errors.hpp"

namespace seqmoments {

namespace {

void require_compatible(const MomentTable& a, const MomentTable& b) {
    if (a.length() != b.length() || !a.support().same_as(b.support()))
        throw ConsistencyError("moment tables are defined over different supports (n=" + std::to_string(a.length()) +
                               " vs n=" + std::to_string(b.length()) + ")");
}

std::vector<double> values_over(const MomentTable& t, const Domain& domain) {
    return domain ? t.materialize(*domain) : t.materialize();
}

std::vector<std::uint32_t> gold_positive(const MomentTable& gold, const Domain& domain) {
    std::vector<std::uint32_t> out;
    if (!domain) {
        for (const auto& e : gold.nonzero()) out.push_back(e.index);
        return out;
    }
    for (auto i : *domain)
        if (gold.value(i) > 0.0) out.push_back(i);
    return out;
}

} // namespace

std::vector<double> average_ranks(std::span<const double> values, RankOrder order) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (order == RankOrder::Ascending)
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    else
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        // positions i..j (0-based) share the mean of ranks i+1..j+1
        const double r = static_cast<double>(i + j + 2) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

MetricValue spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ConsistencyError("spearman: length mismatch (" + std::to_string(a.size()) + " vs " +
                               std::to_string(b.size()) + ")");
    if (a.size() < 2) throw ConsistencyError("spearman: needs at least two points");

    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double mean = static_cast<double>(a.size() + 1) / 2.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double dx = ra[i] - mean;
        const double dy = rb[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MetricValue mspc(const MomentTable& model, const MomentTable& gold, Domain domain) {
    require_compatible(model, gold);
    const auto m = values_over(model, domain);
    if (m.size() < 2) return std::nullopt;
    return spearman(m, values_over(gold, domain));
}

MetricValue mspcp(const MomentTable& model, const MomentTable& gold, Domain domain) {
    require_compatible(model, gold);
    const auto positive = gold_positive(gold, domain);
    if (positive.size() < 2) return std::nullopt;
    return spearman(model.materialize(positive), gold.materialize(positive));
}

MetricValue mr(const MomentTable& model, const MomentTable& gold, Domain domain) {
    require_compatible(model, gold);
    const auto m = values_over(model, domain);
    const auto g = values_over(gold, domain);
    const std::size_t n = m.size();
    std::size_t k = 0;
    for (double v : g) k += v > 0.0;
    if (k == 0 || k == n) return std::nullopt;

    const auto ranks = average_ranks(m, RankOrder::Descending);
    double rank_sum = 0.0;  // half-integers, exact
    for (std::size_t i = 0; i < n; ++i)
        if (g[i] > 0.0) rank_sum += ranks[i];
    return 1.0 - rank_sum / (static_cast<double>(k) * static_cast<double>(n));
}

MetricValue micro(const std::map<std::size_t, MetricValue>& per_length, const std::map<std::size_t, double>& weights) {
    for (const auto& [n, w] : weights)
        if (!(w >= 0.0)) throw InputError("MICRO weights must be >= 0");
    // Shifted weighted mean: equal inputs come back unchanged.
    std::optional<double> anchor;
    double weight_total = 0.0, shifted = 0.0;
    for (const auto& [n, v] : per_length) {
        auto it = weights.find(n);
        if (it == weights.end()) throw ConsistencyError("MICRO: no weight for length " + std::to_string(n));
        if (!v || it->second <= 0.0) continue;
        if (!anchor) anchor = *v;
        weight_total += it->second;
        shifted += it->second * (*v - *anchor);
    }
    if (!anchor) return std::nullopt;
    return *anchor + shifted / weight_total;
}

MetricValue model_pairwise(const MomentTable& a, const MomentTable& b) {
    require_compatible(a, b);
    if (a.support().size() < 2) return std::nullopt;
    return spearman(a.materialize(), b.materialize());
}

std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::MSPC: return "MSPC";
    case Metric::MSPCP: return "MSPCP";
    case Metric::MR: return "MR";
    case Metric::MSPC_U: return "MSPC-U";
    case Metric::MSPCP_U: return "MSPCP-U";
    case Metric::MR_U: return "MR-U";
    }
    return "?";
}

const MetricValue& MetricReport::at(Metric m, std::string_view column, std::size_t n) const {
    auto c = std::find(columns.begin(), columns.end(), column);
    auto l = std::find_if(lengths.begin(), lengths.end(), [&](const LengthStats& s) { return s.n == n; });
    if (c == columns.end() || l == lengths.end()) throw InputError("no report entry for that column/length");
    return values.at(m)[c - columns.begin()][l - lengths.begin()];
}

const MetricValue& MetricReport::micro_at(Metric m, std::string_view column) const {
    auto c = std::find(columns.begin(), columns.end(), column);
    if (c == columns.end()) throw InputError("no report column '" + std::string(column) + "'");
    return micro.at(m)[c - columns.begin()];
}

MetricReport evaluate(const EvaluationInput& input) {
    const std::size_t L = input.gold.size();
    if (L == 0) throw InputError("evaluate: no moment lengths");
    if (input.partitions.size() != L) throw ConsistencyError("evaluate: one seen partition per length required");

    std::vector<const ModelMoments*> columns;
    for (const auto& m : input.models) columns.push_back(&m);
    if (input.baseline) columns.push_back(&*input.baseline);

    MetricReport report;
    report.seen_reading = input.partitions.front().reading();
    for (const auto* c : columns) {
        if (c->tables.size() != L) throw ConsistencyError("model '" + c->id + "' lacks tables for some lengths");
        if (std::find(report.columns.begin(), report.columns.end(), c->id) != report.columns.end())
            throw InputError("duplicate model id '" + c->id + "'");
        report.columns.push_back(c->id);
    }

    for (std::size_t i = 0; i < L; ++i) {
        const auto& gold = input.gold[i];
        const auto& part = input.partitions[i];
        if (i > 0 && gold.length() <= input.gold[i - 1].length())
            throw ConsistencyError("evaluate: lengths must be strictly increasing");
        if (!part.support().same_as(gold.support()))
            throw ConsistencyError("evaluate: seen partition support differs at n=" + std::to_string(gold.length()));
        for (const auto* c : columns) require_compatible(c->tables[i], gold);

        LengthStats s{gold.length(), gold.support().size(), gold.nonzero().size(), part.unseen().size(), 0};
        for (auto idx : part.unseen()) s.unseen_gold_nonzero += gold.value(idx) > 0.0;
        report.lengths.push_back(s);
    }

    report.mr_lengths = input.mr_lengths;
    if (report.mr_lengths.empty())
        for (const auto& s : report.lengths) report.mr_lengths.push_back(s.n);
    auto mr_enabled = [&](std::size_t n) {
        return std::find(report.mr_lengths.begin(), report.mr_lengths.end(), n) != report.mr_lengths.end();
    };

    for (Metric m : kAllMetrics) report.values[m].assign(columns.size(), std::vector<MetricValue>(L));

    for (std::size_t c = 0; c < columns.size(); ++c) {
        for (std::size_t i = 0; i < L; ++i) {
            const auto& model = columns[c]->tables[i];
            const auto& gold = input.gold[i];
            const Domain unseen = input.partitions[i].unseen();
            const bool with_mr = mr_enabled(gold.length());
            report.values[Metric::MSPC][c][i] = mspc(model, gold);
            report.values[Metric::MSPCP][c][i] = mspcp(model, gold);
            report.values[Metric::MSPC_U][c][i] = mspc(model, gold, unseen);
            report.values[Metric::MSPCP_U][c][i] = mspcp(model, gold, unseen);
            if (with_mr) {
                report.values[Metric::MR][c][i] = mr(model, gold);
                report.values[Metric::MR_U][c][i] = mr(model, gold, unseen);
            }
        }
    }

    // MICRO weights: evaluated moments per length for MSPC/MR, gold-positive
    // moments for MSPCP, each restricted to the unseen moments for -U.
    auto weight = [&](Metric m, const LengthStats& s) -> double {
        switch (m) {
        case Metric::MSPC:
        case Metric::MR: return static_cast<double>(s.support_size);
        case Metric::MSPCP: return static_cast<double>(s.gold_nonzero);
        case Metric::MSPC_U:
        case Metric::MR_U: return static_cast<double>(s.unseen_size);
        case Metric::MSPCP_U: return static_cast<double>(s.unseen_gold_nonzero);
        }
        return 0.0;
    };
    for (Metric m : kAllMetrics) {
        std::map<std::size_t, double> weights;
        for (const auto& s : report.lengths) weights[s.n] = weight(m, s);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::map<std::size_t, MetricValue> per_length;
            for (std::size_t i = 0; i < L; ++i) {
                const std::size_t n = report.lengths[i].n;
                if ((m == Metric::MR || m == Metric::MR_U) && !mr_enabled(n)) continue;
                per_length[n] = report.values[m][c][i];
            }
            report.micro[m].push_back(micro(per_length, weights));
        }
    }
    return report;
}

} // namespace seqmoments

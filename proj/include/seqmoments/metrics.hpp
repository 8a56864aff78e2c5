#pragma once

// Rank-based comparison of model moments against gold moments.
//
//   MSPC   Spearman correlation over a domain of Z_n (all of it by default).
//   MSPCP  MSPC restricted to moments whose gold value is positive.
//   MR     1 - mean(rank / N) over gold-positive moments, where ranks are
//          descending (rank 1 = largest model moment) with average ties.
//   *-U    the same metrics over the unseen moments Z_n \ Z_n^T.
//
// An undefined value is std::nullopt and is never folded into MICRO.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqmoments/moments.hpp"

namespace seqmoments {

using MetricValue = std::optional<double>;

enum class RankOrder { Ascending, Descending };

// Average-tie ranks in [1, N].
std::vector<double> average_ranks(std::span<const double> values, RankOrder order = RankOrder::Ascending);

// Pearson correlation of average-tie ranks; nullopt when either side is
// constant. Throws ConsistencyError on length mismatch or length < 2.
MetricValue spearman(std::span<const double> a, std::span<const double> b);

// Domains are sorted support indices; an empty optional means all of Z_n.
using Domain = std::optional<std::span<const std::uint32_t>>;

MetricValue mspc(const MomentTable& model, const MomentTable& gold, Domain domain = std::nullopt);
MetricValue mspcp(const MomentTable& model, const MomentTable& gold, Domain domain = std::nullopt);
MetricValue mr(const MomentTable& model, const MomentTable& gold, Domain domain = std::nullopt);

// Weighted mean of the defined values with positive weight.
MetricValue micro(const std::map<std::size_t, MetricValue>& per_length, const std::map<std::size_t, double>& weights);

// Spearman between two model tables over the full support.
MetricValue model_pairwise(const MomentTable& a, const MomentTable& b);

enum class Metric { MSPC, MSPCP, MR, MSPC_U, MSPCP_U, MR_U };
inline constexpr std::array<Metric, 6> kAllMetrics = {Metric::MSPC,   Metric::MSPCP,   Metric::MR,
                                                      Metric::MSPC_U, Metric::MSPCP_U, Metric::MR_U};
std::string_view metric_name(Metric m);

struct ModelMoments {
    std::string id;
    std::vector<MomentTable> tables;  // one per evaluated length, same order as gold
};

struct EvaluationInput {
    std::vector<MomentTable> gold;            // one per length, increasing n
    std::vector<SeenPartition> partitions;    // aligned with gold
    std::vector<ModelMoments> models;
    std::optional<ModelMoments> baseline;     // reported as BASELINE
    std::vector<std::size_t> mr_lengths;      // lengths entering MR/MR-U; empty = all
};

struct LengthStats {
    std::size_t n = 0;
    std::size_t support_size = 0;
    std::size_t gold_nonzero = 0;
    std::size_t unseen_size = 0;
    std::size_t unseen_gold_nonzero = 0;
};

struct MetricReport {
    std::vector<std::string> columns;  // models, then BASELINE when present
    std::vector<LengthStats> lengths;
    SeenReading seen_reading = SeenReading::AllOfTraining;
    std::vector<std::size_t> mr_lengths;

    // values[metric][column][length index]
    std::map<Metric, std::vector<std::vector<MetricValue>>> values;
    std::map<Metric, std::vector<MetricValue>> micro;

    const MetricValue& at(Metric m, std::string_view column, std::size_t n) const;
    const MetricValue& micro_at(Metric m, std::string_view column) const;
};

MetricReport evaluate(const EvaluationInput& input);

} // namespace seqmoments

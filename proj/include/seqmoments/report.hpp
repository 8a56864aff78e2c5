#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "seqmoments/metrics.hpp"

namespace seqmoments {

// Rank convention line recorded in every meta.tsv.
inline constexpr std::string_view kMrConvention =
    "MR = 1 - mean over gold-positive moments of rank/N; descending ranks (1 = largest model moment), ties averaged";

using MetaFields = std::vector<std::pair<std::string, std::string>>;

// Writes <metric>.tsv for all six metrics plus meta.tsv. Each table has rows
// N<n> for the evaluated lengths then MICRO, one column per model; undefined
// values are printed as NA.
void write_report(const MetricReport& report, const std::filesystem::path& dir, const MetaFields& extra = {});

// One "m<TAB>model<TAB>metric<TAB>value" row per (model, metric) MICRO value.
void write_plot_series(const MetricReport& report, std::size_t m, const std::filesystem::path& path);

std::string format_metric(const MetricValue& v);

} // namespace seqmoments

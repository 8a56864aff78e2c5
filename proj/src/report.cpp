#include "seqmoments/report.hpp"

#include <algorithm>

#include "text_io.hpp"

namespace seqmoments {

std::string format_metric(const MetricValue& v) {
    return v ? detail::format_double(*v) : std::string("NA");
}

void write_report(const MetricReport& report, const std::filesystem::path& dir, const MetaFields& extra) {
    std::filesystem::create_directories(dir);
    for (Metric m : kAllMetrics) {
        const bool is_mr = m == Metric::MR || m == Metric::MR_U;
        auto out = detail::open_output(dir / (std::string(metric_name(m)) + ".tsv"));
        out << "length";
        for (const auto& c : report.columns) out << '\t' << c;
        out << '\n';
        for (std::size_t i = 0; i < report.lengths.size(); ++i) {
            const std::size_t n = report.lengths[i].n;
            if (is_mr && std::find(report.mr_lengths.begin(), report.mr_lengths.end(), n) == report.mr_lengths.end())
                continue;
            out << 'N' << n;
            for (std::size_t c = 0; c < report.columns.size(); ++c) out << '\t' << format_metric(report.values.at(m)[c][i]);
            out << '\n';
        }
        out << "MICRO";
        for (const auto& v : report.micro.at(m)) out << '\t' << format_metric(v);
        out << '\n';
    }

    auto out = detail::open_output(dir / "meta.tsv");
    out << "seen_reading\t" << to_string(report.seen_reading) << '\n';
    out << "mr_rank_convention\t" << kMrConvention << '\n';
    out << "mr_lengths\t";
    for (std::size_t i = 0; i < report.mr_lengths.size(); ++i) out << (i ? "," : "") << report.mr_lengths[i];
    out << '\n';
    out << "micro_weights\tMSPC,MR:|Z_n|; MSPCP:gold-nonzero; -U variants: same counts over unseen moments\n";
    for (const auto& [k, v] : extra) out << k << '\t' << v << '\n';
    for (const auto& s : report.lengths) {
        out << "support_size.N" << s.n << '\t' << s.support_size << '\n';
        out << "gold_nonzero.N" << s.n << '\t' << s.gold_nonzero << '\n';
        out << "unseen_size.N" << s.n << '\t' << s.unseen_size << '\n';
        out << "unseen_gold_nonzero.N" << s.n << '\t' << s.unseen_gold_nonzero << '\n';
    }
}

void write_plot_series(const MetricReport& report, std::size_t m, const std::filesystem::path& path) {
    auto out = detail::open_output(path);
    for (std::size_t c = 0; c < report.columns.size(); ++c)
        for (Metric metric : kAllMetrics)
            out << m << '\t' << report.columns[c] << '\t' << metric_name(metric) << '\t'
                << format_metric(report.micro.at(metric)[c]) << '\n';
}

} // namespace seqmoments

#include "seqmoments/moments.hpp"

#include <algorithm>
#include <cmath>

#include "seqmoments/errors.hpp"
#include "seqmoments/kernel.hpp"
#include "text_io.hpp"

namespace seqmoments {

namespace {

void require_support(const SupportHandle& support) {
    if (!support) throw ConsistencyError("moment computation needs a support set");
}

} // namespace

SeenReading parse_seen_reading(std::string_view name) {
    if (name == "all") return SeenReading::AllOfTraining;
    if (name == "positives") return SeenReading::PositivesOnly;
    throw InputError("unknown seen reading '" + std::string(name) + "' (expected all|positives)");
}

std::string_view to_string(SeenReading r) {
    return r == SeenReading::AllOfTraining ? "all" : "positives";
}

// ─── MomentTable ─────────────────────────────────────────────

MomentTable::MomentTable(SupportHandle support, std::uint64_t normalizer, std::vector<Entry> entries)
    : support_(std::move(support)), normalizer_(normalizer) {
    require_support(support_);
    if (normalizer_ == 0) throw InputError("moment normalizer |U| must be >= 1");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    for (const auto& e : entries) {
        if (e.index >= support_->size()) throw ConsistencyError("moment key outside the support");
        if (!std::isfinite(e.value) || e.value < 0.0) throw InputError("moment values must be finite and >= 0");
        if (!entries_.empty() && entries_.back().index == e.index) throw InputError("duplicate moment key");
        if (e.value > 0.0) entries_.push_back(e);
    }
}

MomentTable MomentTable::from_sums(SupportHandle support, std::uint64_t normalizer, std::span<const double> sums) {
    std::vector<Entry> entries;
    const double norm = static_cast<double>(normalizer);
    for (std::size_t i = 0; i < sums.size(); ++i)
        if (sums[i] != 0.0) entries.push_back({static_cast<std::uint32_t>(i), sums[i] / norm});
    return MomentTable(std::move(support), normalizer, std::move(entries));
}

double MomentTable::value(std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.index < i; });
    return it != entries_.end() && it->index == index ? it->value : 0.0;
}

std::vector<double> MomentTable::materialize() const {
    std::vector<double> out(support_->size(), 0.0);
    for (const auto& e : entries_) out[e.index] = e.value;
    return out;
}

std::vector<double> MomentTable::materialize(std::span<const std::uint32_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(value(i));
    return out;
}

MomentTable MomentTable::scaled(double factor) const {
    auto entries = entries_;
    for (auto& e : entries) e.value *= factor;
    return MomentTable(support_, normalizer_, std::move(entries));
}

bool MomentTable::operator==(const MomentTable& other) const {
    return support_->same_as(*other.support_) && normalizer_ == other.normalizer_ && entries_ == other.entries_;
}

// ─── SeenPartition ───────────────────────────────────────────

SeenPartition::SeenPartition(SupportHandle support, std::vector<std::uint32_t> seen, SeenReading reading)
    : support_(std::move(support)), reading_(reading), seen_(std::move(seen)) {
    require_support(support_);
    std::sort(seen_.begin(), seen_.end());
    seen_.erase(std::unique(seen_.begin(), seen_.end()), seen_.end());
    if (!seen_.empty() && seen_.back() >= support_->size()) throw ConsistencyError("seen index outside the support");
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < support_->size(); ++i) {
        if (k < seen_.size() && seen_[k] == i)
            ++k;
        else
            unseen_.push_back(i);
    }
}

bool SeenPartition::is_seen(std::uint32_t index) const {
    return std::binary_search(seen_.begin(), seen_.end(), index);
}

// ─── Moment functions ────────────────────────────────────────

MomentTable gold_moments(const SequenceCorpus& domain, const SequenceCorpus& target, const SupportHandle& support,
                         int workers) {
    require_support(support);
    if (!target.is_submultiset_of(domain)) throw ConsistencyError("target Y is not a sub-multiset of domain U");
    std::vector<WeightedSequence> items;
    items.reserve(target.distinct());
    for (const auto& e : target.entries()) items.push_back({e.sequence.view(), static_cast<double>(e.count)});
    return MomentTable::from_sums(support, domain.total(), window_sums_parallel(*support, items, workers));
}

MomentTable model_moments(const SequenceCorpus& domain, const PredictionSet& predictions,
                          const SupportHandle& support, int workers, MissingPolicy missing) {
    require_support(support);
    std::vector<WeightedSequence> items;
    items.reserve(domain.distinct());
    for (const auto& e : domain.entries()) {
        auto p = predictions.probability(e.sequence.view());
        if (!p) {
            if (missing == MissingPolicy::Fail)
                throw CoverageError("no prediction for domain sequence '" +
                                    render(e.sequence.view(), domain.alphabet(), Tokenization::Whitespace) + "'");
            continue;
        }
        items.push_back({e.sequence.view(), static_cast<double>(e.count) * *p});
    }
    return MomentTable::from_sums(support, domain.total(), window_sums_parallel(*support, items, workers));
}

MomentTable baseline_moments(const SequenceCorpus& domain, const LabeledSet& training, const SupportHandle& support,
                             int workers) {
    require_support(support);
    std::vector<WeightedSequence> items;
    for (const auto& item : training.items)
        if (item.label == 1) items.push_back({item.sequence.view(), 1.0});
    return MomentTable::from_sums(support, domain.total(), window_sums_parallel(*support, items, workers));
}

SeenPartition seen_partition(const LabeledSet& training, const SupportHandle& support, SeenReading reading) {
    require_support(support);
    const std::size_t n = support->length();
    std::vector<std::uint32_t> seen;
    for (const auto& item : training.items) {
        if (reading == SeenReading::PositivesOnly && item.label != 1) continue;
        const auto x = item.sequence.view();
        for (std::size_t p = 0; p + n <= x.size(); ++p)
            if (auto idx = support->index_of(x.subspan(p, n))) seen.push_back(*idx);
    }
    return SeenPartition(support, std::move(seen), reading);
}

// ─── Files ───────────────────────────────────────────────────

void save_moment_table(const MomentTable& table, const std::filesystem::path& path, const Alphabet& alphabet,
                       Tokenization t) {
    auto out = detail::open_output(path);
    out << "n=" << table.length() << "\tnormalizer=" << table.normalizer() << '\n';
    for (const auto& e : table.nonzero())
        out << render(table.support().member(e.index), alphabet, t) << '\t' << detail::format_double(e.value) << '\n';
}

MomentTable load_moment_table(const std::filesystem::path& path, const SupportHandle& support,
                              const Alphabet& alphabet, Tokenization t) {
    require_support(support);
    std::uint64_t normalizer = 0;
    std::vector<MomentTable::Entry> entries;
    detail::for_each_line(path, [&](std::string_view line, std::size_t number) {
        const auto at = detail::where(path, number);
        if (number == 1) {
            std::int64_t n = 0, norm = 0;
            auto tab = line.find('\t');
            if (!line.starts_with("n=") || tab == std::string_view::npos ||
                !line.substr(tab + 1).starts_with("normalizer=") || !detail::parse_int(line.substr(2, tab - 2), n) ||
                !detail::parse_int(line.substr(tab + 12), norm) || norm < 1)
                throw InputError(at + ": expected header n=<n>\\tnormalizer=<|U|>");
            if (static_cast<std::size_t>(n) != support->length())
                throw ConsistencyError(at + ": table length does not match the support length");
            normalizer = static_cast<std::uint64_t>(norm);
            return;
        }
        if (detail::trim(line).empty()) return;
        auto tab = line.rfind('\t');
        double v = 0.0;
        if (tab == std::string_view::npos || !detail::parse_double(line.substr(tab + 1), v))
            throw InputError(at + ": expected subsequence<TAB>value");
        auto idx = support->index_of(encode(line.substr(0, tab), alphabet, t).view());
        if (!idx) throw ConsistencyError(at + ": subsequence outside the support");
        entries.push_back({*idx, v});
    });
    if (normalizer == 0) throw InputError(path.string() + ": missing header");
    return MomentTable(support, normalizer, std::move(entries));
}

} // namespace seqmoments

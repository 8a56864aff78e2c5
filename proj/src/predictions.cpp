#include "seqmoments/predictions.hpp"

#include <algorithm>
#include <cmath>

#include "seqmoments/errors.hpp"
#include "seqmoments/rng.hpp"
#include "text_io.hpp"

namespace seqmoments {

PredictionSet::PredictionSet(std::string model_id, std::vector<Entry> entries)
    : model_id_(std::move(model_id)), entries_(std::move(entries)) {
    for (const auto& e : entries_)
        if (!(e.probability >= 0.0 && e.probability <= 1.0))
            throw InputError("probability " + detail::format_double(e.probability) + " outside [0,1]");
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.sequence < b.sequence; });
    auto dup = std::adjacent_find(entries_.begin(), entries_.end(),
                                  [](const Entry& a, const Entry& b) { return a.sequence == b.sequence; });
    if (dup != entries_.end()) throw InputError("duplicate prediction key");
}

std::optional<double> PredictionSet::probability(SymbolView s) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), s, [](const Entry& e, SymbolView key) {
        return compare_symbols(e.sequence.view(), key) < 0;
    });
    if (it == entries_.end() || compare_symbols(it->sequence.view(), s) != 0) return std::nullopt;
    return it->probability;
}

bool PredictionSet::operator==(const PredictionSet& other) const {
    if (model_id_ != other.model_id_ || entries_.size() != other.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].sequence != other.entries_[i].sequence ||
            entries_[i].probability != other.entries_[i].probability)
            return false;
    return true;
}

PredictionSet load_predictions(const std::filesystem::path& path, const Alphabet& alphabet, Tokenization t,
                               std::string model_id) {
    std::vector<PredictionSet::Entry> entries;
    std::vector<std::string> texts;
    detail::for_each_line(path, [&](std::string_view line, std::size_t number) {
        if (detail::trim(line).empty()) return;
        const auto at = detail::where(path, number);
        auto tab = line.rfind('\t');
        if (tab == std::string_view::npos) throw InputError(at + ": expected sequence<TAB>probability");
        double p = 0.0;
        if (!detail::parse_double(detail::trim(line.substr(tab + 1)), p))
            throw InputError(at + ": unparseable probability");
        if (!(p >= 0.0 && p <= 1.0)) throw InputError(at + ": probability out of range [0,1]");
        const auto text = detail::trim(line.substr(0, tab));
        try {
            entries.push_back({encode(text, alphabet, t), p});
        } catch (const InputError& e) {
            throw InputError(at + ": " + e.what());
        }
        texts.emplace_back(text);
    });
    // Report duplicates by name before the constructor rejects them.
    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return entries[a].sequence < entries[b].sequence; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (entries[order[i]].sequence == entries[order[i - 1]].sequence)
            throw InputError(path.string() + ": duplicate key " + texts[order[i]]);
    return PredictionSet(std::move(model_id), std::move(entries));
}

void save_predictions(const PredictionSet& predictions, const std::filesystem::path& path, const Alphabet& alphabet,
                      Tokenization t) {
    auto out = detail::open_output(path);
    for (const auto& e : predictions.entries())
        out << render(e.sequence.view(), alphabet, t) << '\t' << detail::format_double(e.probability) << '\n';
}

std::vector<Sequence> validate_coverage(const PredictionSet& predictions, const SequenceCorpus& domain) {
    std::vector<Sequence> missing;
    for (const auto& e : domain.entries())
        if (!predictions.probability(e.sequence.view())) missing.push_back(e.sequence);
    return missing;
}

PredictionSet oracle_predictor(const TaskBundle& task) {
    std::vector<PredictionSet::Entry> entries;
    entries.reserve(task.domain.distinct());
    for (const auto& e : task.domain.entries())
        entries.push_back({e.sequence, task.is_positive(e.sequence.view()) ? 1.0 : 0.0});
    return PredictionSet("ORACLE", std::move(entries));
}

PredictionSet noisy_oracle_predictor(const TaskBundle& task, double flip_rate, std::uint64_t seed) {
    if (!(flip_rate >= 0.0 && flip_rate < 1.0)) throw InputError("flip rate must lie in [0, 1)");
    Rng rng(seed);
    std::vector<PredictionSet::Entry> entries;
    entries.reserve(task.domain.distinct());
    for (const auto& e : task.domain.entries()) {
        double p = task.is_positive(e.sequence.view()) ? 1.0 : 0.0;
        // Both draws are always taken so the stream does not depend on flip_rate.
        const double coin = rng.uniform01();
        const double noise = rng.uniform01();
        if (coin < flip_rate) p = noise;
        entries.push_back({e.sequence, p});
    }
    return PredictionSet("NOISY", std::move(entries));
}

PredictionSet uniform_predictor(const TaskBundle& task, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<PredictionSet::Entry> entries;
    entries.reserve(task.domain.distinct());
    for (const auto& e : task.domain.entries()) entries.push_back({e.sequence, rng.uniform01()});
    return PredictionSet("UNIFORM", std::move(entries));
}

} // namespace seqmoments

#pragma once

// Per-sequence classifier outputs Pr_M(y=1 | x), keyed by distinct sequence.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqmoments/corpus.hpp"
#include "seqmoments/task.hpp"

namespace seqmoments {

class PredictionSet {
public:
    struct Entry {
        Sequence sequence;
        double probability = 0.0;
    };

    // Rejects probabilities outside [0, 1] (NaN included) and duplicate keys.
    PredictionSet(std::string model_id, std::vector<Entry> entries);

    const std::string& model_id() const noexcept { return model_id_; }
    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::optional<double> probability(SymbolView s) const;

    bool operator==(const PredictionSet& other) const;

private:
    std::string model_id_;
    std::vector<Entry> entries_;  // sorted by sequence
};

// "sequence<TAB>probability" per line.
PredictionSet load_predictions(const std::filesystem::path& path, const Alphabet& alphabet, Tokenization t,
                               std::string model_id);
void save_predictions(const PredictionSet& predictions, const std::filesystem::path& path, const Alphabet& alphabet,
                      Tokenization t);

// Distinct domain sequences without a prediction, in sorted order.
std::vector<Sequence> validate_coverage(const PredictionSet& predictions, const SequenceCorpus& domain);

// p(x) = 1 for x in the positive key, 0 otherwise, over every distinct x in U.
PredictionSet oracle_predictor(const TaskBundle& task);

// Oracle output where each sequence, with probability flip_rate, instead
// receives a uniform draw from [0, 1).
PredictionSet noisy_oracle_predictor(const TaskBundle& task, double flip_rate, std::uint64_t seed);

// Uniform draw from [0, 1) for every distinct domain sequence.
PredictionSet uniform_predictor(const TaskBundle& task, std::uint64_t seed);

} // namespace seqmoments

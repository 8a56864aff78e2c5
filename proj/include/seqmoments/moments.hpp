#pragma once

// Gold, model and memorizing-baseline moment tables over a support Z_n, and
// the seen/unseen split of Z_n induced by a training set.
//
// A moment E(z) is the expected number of occurrences of window z per domain
// sequence: (1/|U|) * sum over weighted sequences x of weight(x) * #[z in x].
// Every table divides by |U|, including the gold one.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "seqmoments/corpus.hpp"
#include "seqmoments/predictions.hpp"
#include "seqmoments/support.hpp"

namespace seqmoments {

enum class SeenReading { AllOfTraining, PositivesOnly };
enum class MissingPolicy { Fail, TreatAsZero };

SeenReading parse_seen_reading(std::string_view name);
std::string_view to_string(SeenReading r);

class MomentTable {
public:
    struct Entry {
        std::uint32_t index = 0;  // into the support
        double value = 0.0;

        bool operator==(const Entry&) const = default;
    };

    // Zero values are dropped; negative or non-finite values are rejected.
    MomentTable(SupportHandle support, std::uint64_t normalizer, std::vector<Entry> entries);

    // value[i] = sums[i] / normalizer
    static MomentTable from_sums(SupportHandle support, std::uint64_t normalizer, std::span<const double> sums);

    std::size_t length() const noexcept { return support_->length(); }
    std::uint64_t normalizer() const noexcept { return normalizer_; }
    const SupportSet& support() const noexcept { return *support_; }
    const SupportHandle& support_handle() const noexcept { return support_; }

    std::span<const Entry> nonzero() const noexcept { return entries_; }
    double value(std::uint32_t index) const;

    // Dense values over the whole support, or over selected support indices.
    std::vector<double> materialize() const;
    std::vector<double> materialize(std::span<const std::uint32_t> indices) const;

    // Pointwise scaling, used by invariance tests and mixtures.
    MomentTable scaled(double factor) const;

    bool operator==(const MomentTable& other) const;

private:
    SupportHandle support_;
    std::uint64_t normalizer_;
    std::vector<Entry> entries_;  // sorted by index, values > 0
};

class SeenPartition {
public:
    SeenPartition(SupportHandle support, std::vector<std::uint32_t> seen, SeenReading reading);

    std::size_t length() const noexcept { return support_->length(); }
    const SupportSet& support() const noexcept { return *support_; }
    SeenReading reading() const noexcept { return reading_; }

    std::span<const std::uint32_t> seen() const noexcept { return seen_; }
    std::span<const std::uint32_t> unseen() const noexcept { return unseen_; }
    bool is_seen(std::uint32_t index) const;

private:
    SupportHandle support_;
    SeenReading reading_;
    std::vector<std::uint32_t> seen_;
    std::vector<std::uint32_t> unseen_;
};

// E_Y: target sequences weighted by their multiplicity in Y.
MomentTable gold_moments(const SequenceCorpus& domain, const SequenceCorpus& target, const SupportHandle& support,
                         int workers = 1);

// E_M: domain sequences weighted by multiplicity times predicted probability.
MomentTable model_moments(const SequenceCorpus& domain, const PredictionSet& predictions,
                          const SupportHandle& support, int workers = 1,
                          MissingPolicy missing = MissingPolicy::Fail);

// E_B: positive training items, one unit each; windows outside Z_n are ignored.
MomentTable baseline_moments(const SequenceCorpus& domain, const LabeledSet& training, const SupportHandle& support,
                             int workers = 1);

// Support members occurring as a window of some training sequence.
SeenPartition seen_partition(const LabeledSet& training, const SupportHandle& support,
                             SeenReading reading = SeenReading::AllOfTraining);

// Header "n=<n>\tnormalizer=<|U|>", then "subsequence\tvalue" per nonzero entry
// in lexicographic order, values with 17 significant digits.
void save_moment_table(const MomentTable& table, const std::filesystem::path& path, const Alphabet& alphabet,
                       Tokenization t);
MomentTable load_moment_table(const std::filesystem::path& path, const SupportHandle& support,
                              const Alphabet& alphabet, Tokenization t);

} // namespace seqmoments

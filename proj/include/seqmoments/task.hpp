#pragma once

// Evaluation task generation: the domain corpus U of fixed-length windows,
// the target multiset Y drawn from one family, and labeled training sets
// sampled from U.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqmoments/corpus.hpp"

namespace seqmoments {

using FamilyMap = std::map<std::string, std::vector<Sequence>>;

struct FamilyData {
    Alphabet alphabet;
    FamilyMap families;
};

// How many copies of a target window Y receives.
//   Domain: every copy the window has in U (Y = all U occurrences of windows
//           seen in the target family). Labels and Y then agree, and a 0/1
//           oracle reproduces the gold moments exactly.
//   Family: only the copies produced by the target family's own sequences.
enum class TargetMultiplicity { Domain, Family };

TargetMultiplicity parse_target_multiplicity(std::string_view name);
std::string_view to_string(TargetMultiplicity m);

struct TaskOptions {
    std::size_t segment_length = 5;
    std::optional<std::string> target_family;      // nullopt: rarest by |Y|/|U|
    std::optional<std::string> validation_family;  // metadata only
    TargetMultiplicity multiplicity = TargetMultiplicity::Domain;
    Tokenization tokenization = Tokenization::Char;
};

struct TaskBundle {
    SequenceCorpus domain;               // U
    SequenceCorpus target;               // Y, sub-multiset of U
    std::vector<Sequence> positive_key;  // distinct sequences of Y, sorted
    std::size_t segment_length = 0;
    std::string target_family;
    std::optional<std::string> validation_family;
    TargetMultiplicity multiplicity = TargetMultiplicity::Domain;
    Tokenization tokenization = Tokenization::Char;

    const Alphabet& alphabet() const noexcept { return domain.alphabet(); }
    double sparsity() const {
        return static_cast<double>(target.total()) / static_cast<double>(domain.total());
    }
    bool is_positive(SymbolView s) const;
};

// "familyId<TAB>sequence" per line.
FamilyData load_families(const std::filesystem::path& path, Tokenization t,
                         const std::optional<Alphabet>& alphabet = std::nullopt);
void save_families(const FamilyData& data, const std::filesystem::path& path, Tokenization t);

TaskBundle build_task(const FamilyData& data, const TaskOptions& options);

// m i.i.d. draws from U proportional to multiplicity; label 1 iff positive.
LabeledSet sample_training_set(const TaskBundle& task, std::size_t m, std::uint64_t seed);

// Directory layout: U.counted, Y.counted, positive_key.txt, meta.tsv.
void save_task(const TaskBundle& task, const std::filesystem::path& dir);
TaskBundle load_task(const std::filesystem::path& dir);

} // namespace seqmoments

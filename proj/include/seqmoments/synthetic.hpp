#pragma once

// Seeded synthetic family data for tests, benchmarks and demos.

#include <cstdint>

#include "seqmoments/task.hpp"

namespace seqmoments {

struct SyntheticFamilySpec {
    std::size_t alphabet_size = 8;
    std::size_t families = 12;
    std::size_t sequences_per_family = 40;
    std::size_t target_sequences = 4;   // the first family ("F00") is kept small
    std::size_t sequence_length = 120;
    // Probability that a family's Markov chain follows its preferred
    // successor instead of a uniform symbol.
    double sharpness = 0.85;
    std::uint64_t seed = 1;
};

// Each family is an order-1 Markov chain whose preferred successor table is
// drawn per family; family ids are F00, F01, ...
FamilyData generate_families(const SyntheticFamilySpec& spec);

// Uniform random sequences; used to produce very large supports.
SequenceCorpus uniform_corpus(std::size_t alphabet_size, std::size_t sequences, std::size_t length,
                              std::uint64_t seed);

} // namespace seqmoments

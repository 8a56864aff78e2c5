#include "seqmoments/synthetic.hpp"

#include <cstdio>

#include "seqmoments/errors.hpp"
#include "seqmoments/rng.hpp"

namespace seqmoments {

namespace {

Alphabet letters(std::size_t size) {
    static constexpr std::string_view pool = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < size; ++i)
        symbols.push_back(size <= pool.size() ? std::string(1, pool[i]) : "s" + std::to_string(i));
    return Alphabet::infer(std::move(symbols));
}

} // namespace

FamilyData generate_families(const SyntheticFamilySpec& spec) {
    if (spec.alphabet_size == 0 || spec.families == 0 || spec.sequence_length == 0)
        throw InputError("synthetic spec needs a non-empty alphabet, families and sequences");
    Rng rng(spec.seed);
    FamilyData data{letters(spec.alphabet_size), {}};
    const auto A = spec.alphabet_size;
    for (std::size_t f = 0; f < spec.families; ++f) {
        char id[16];
        std::snprintf(id, sizeof id, "F%02zu", f);
        std::vector<Symbol> preferred(A);
        for (auto& p : preferred) p = static_cast<Symbol>(rng.uniform_below(A));

        const std::size_t count = f == 0 ? spec.target_sequences : spec.sequences_per_family;
        auto& seqs = data.families[id];
        for (std::size_t s = 0; s < count; ++s) {
            Sequence seq;
            seq.symbols.reserve(spec.sequence_length);
            auto cur = static_cast<Symbol>(rng.uniform_below(A));
            for (std::size_t i = 0; i < spec.sequence_length; ++i) {
                seq.symbols.push_back(cur);
                cur = rng.uniform01() < spec.sharpness ? preferred[cur] : static_cast<Symbol>(rng.uniform_below(A));
            }
            seqs.push_back(std::move(seq));
        }
    }
    return data;
}

SequenceCorpus uniform_corpus(std::size_t alphabet_size, std::size_t sequences, std::size_t length,
                              std::uint64_t seed) {
    if (alphabet_size == 0 || length == 0) throw InputError("uniform corpus needs symbols and length >= 1");
    Rng rng(seed);
    std::vector<Sequence> seqs(sequences);
    for (auto& s : seqs) {
        s.symbols.resize(length);
        for (auto& sym : s.symbols) sym = static_cast<Symbol>(rng.uniform_below(alphabet_size));
    }
    return SequenceCorpus::from_sequences(letters(alphabet_size), std::move(seqs));
}

} // namespace seqmoments

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "seqmoments/corpus.hpp"

namespace seqmoments {

// The distinct length-n windows Z_n observed in a corpus, sorted
// lexicographically. Members are stored back to back in one flat buffer and
// indexed by an open-addressing hash table, which keeps million-member
// supports compact.
class SupportSet;
using SupportHandle = std::shared_ptr<const SupportSet>;

class SupportSet {
public:
    // Members are sorted and deduplicated; all must have length n.
    SupportSet(std::size_t n, std::vector<Sequence> members);

    std::size_t length() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ == 0 ? 0 : flat_.size() / n_; }
    bool empty() const noexcept { return flat_.empty(); }

    SymbolView member(std::size_t i) const { return SymbolView(flat_).subspan(i * n_, n_); }
    std::optional<std::uint32_t> index_of(SymbolView window) const;

    // Same length and same members.
    bool same_as(const SupportSet& other) const { return this == &other || (n_ == other.n_ && flat_ == other.flat_); }

private:
    friend SupportHandle enumerate_support(const SequenceCorpus& corpus, std::size_t n);
    SupportSet(std::size_t n, std::vector<Symbol> flat_sorted_unique);

    void build_index();

    std::size_t n_;
    std::vector<Symbol> flat_;
    std::vector<std::uint32_t> slots_;
};

// Z_n of a corpus. Empty when every sequence is shorter than n; throws for n = 0.
SupportHandle enumerate_support(const SequenceCorpus& corpus, std::size_t n);

// Overlapping occurrences of z in x; 0 when z is longer than x.
std::size_t count_occurrences(SymbolView z, SymbolView x);

// One member per line, sorted.
void save_support(const SupportSet& support, const std::filesystem::path& path, const Alphabet& alphabet,
                  Tokenization t);

} // namespace seqmoments

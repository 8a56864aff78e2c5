#pragma once

// Alphabets, symbol sequences and multiset corpora.
//
// A SequenceCorpus stores each distinct sequence once together with its
// multiplicity, so it doubles as an empirical distribution over sequences.
// Entries are kept sorted (lexicographically by symbol index), which makes
// every derived artifact reproducible byte for byte.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqmoments {

using Symbol = std::uint16_t;
using SymbolView = std::span<const Symbol>;

enum class Tokenization { Char, Whitespace };
enum class CorpusFormat { Plain, Counted };

Tokenization parse_tokenization(std::string_view name);
std::string_view to_string(Tokenization t);
CorpusFormat parse_corpus_format(std::string_view name);

class Alphabet {
public:
    // Symbols keep the given order; duplicates, empty tokens and tokens with
    // whitespace are rejected.
    explicit Alphabet(std::vector<std::string> symbols);

    // Lexicographically sorted alphabet over the given tokens.
    static Alphabet infer(std::vector<std::string> tokens);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& symbol(Symbol s) const { return symbols_.at(s); }
    std::span<const std::string> symbols() const noexcept { return symbols_; }
    std::optional<Symbol> find(std::string_view token) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, Symbol, std::less<>> index_;
};

struct Sequence {
    std::vector<Symbol> symbols;

    Sequence() = default;
    explicit Sequence(std::vector<Symbol> s) : symbols(std::move(s)) {}
    explicit Sequence(SymbolView s) : symbols(s.begin(), s.end()) {}

    std::size_t length() const noexcept { return symbols.size(); }
    SymbolView view() const noexcept { return symbols; }

    auto operator<=>(const Sequence&) const = default;
    bool operator==(const Sequence&) const = default;
};

std::strong_ordering compare_symbols(SymbolView a, SymbolView b);
std::uint64_t hash_symbols(SymbolView s) noexcept;

struct SequenceHash {
    std::size_t operator()(const Sequence& s) const noexcept { return hash_symbols(s.view()); }
};

// Tokens of one line; Char splits into UTF-8 code points.
std::vector<std::string> split_tokens(std::string_view text, Tokenization t);
Sequence encode(std::string_view text, const Alphabet& alphabet, Tokenization t);
std::string render(SymbolView s, const Alphabet& alphabet, Tokenization t);

struct CorpusEntry {
    Sequence sequence;
    std::uint64_t count = 0;
};

class SequenceCorpus {
public:
    // Duplicate sequences are merged by summing counts. Counts must be >= 1
    // and every symbol must index into the alphabet.
    SequenceCorpus(Alphabet alphabet, std::vector<CorpusEntry> entries);

    static SequenceCorpus from_sequences(Alphabet alphabet, std::vector<Sequence> sequences);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::span<const CorpusEntry> entries() const noexcept { return entries_; }
    std::size_t distinct() const noexcept { return entries_.size(); }
    std::uint64_t total() const noexcept { return total_; }
    bool empty() const noexcept { return entries_.empty(); }

    std::uint64_t multiplicity(SymbolView s) const;
    bool contains(SymbolView s) const { return multiplicity(s) > 0; }

    // Entrywise multiplicity check against a larger corpus.
    bool is_submultiset_of(const SequenceCorpus& other) const;

    bool operator==(const SequenceCorpus& other) const;

private:
    Alphabet alphabet_;
    std::vector<CorpusEntry> entries_;
    std::uint64_t total_ = 0;
};

struct LabeledItem {
    Sequence sequence;
    int label = 0;

    bool operator==(const LabeledItem&) const = default;
};

struct LabeledSet {
    std::vector<LabeledItem> items;

    std::size_t size() const noexcept { return items.size(); }
    bool operator==(const LabeledSet&) const = default;
};

// Throws InputError unless every label is 0/1 and every symbol is valid.
void validate_labeled_set(const LabeledSet& set, const Alphabet& alphabet);

Alphabet load_alphabet(const std::filesystem::path& path);
void save_alphabet(const Alphabet& alphabet, const std::filesystem::path& path);

// Alphabet is inferred from the observed symbols unless one is supplied.
SequenceCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format, Tokenization t,
                           const std::optional<Alphabet>& alphabet = std::nullopt);
// Always writes the counted format, entries in sorted order.
void save_corpus(const SequenceCorpus& corpus, const std::filesystem::path& path, Tokenization t);

// "label<TAB>sequence" per line.
LabeledSet load_labeled_set(const std::filesystem::path& path, const Alphabet& alphabet, Tokenization t);
void save_labeled_set(const LabeledSet& set, const std::filesystem::path& path, const Alphabet& alphabet,
                      Tokenization t);

} // namespace seqmoments

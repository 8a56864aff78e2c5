#include "seqmoments/corpus.hpp"

#include <algorithm>
#include <set>

#include "seqmoments/errors.hpp"
#include "text_io.hpp"

namespace seqmoments {

namespace {

bool has_whitespace(std::string_view s) {
    return s.find_first_of(" \t\r\n\f\v") != std::string_view::npos;
}

std::size_t utf8_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 1;
}

void check_symbols(SymbolView s, const Alphabet& alphabet) {
    for (Symbol sym : s)
        if (sym >= alphabet.size())
            throw InputError("symbol index " + std::to_string(sym) + " outside alphabet of size " +
                             std::to_string(alphabet.size()));
}

} // namespace

Tokenization parse_tokenization(std::string_view name) {
    if (name == "char") return Tokenization::Char;
    if (name == "whitespace") return Tokenization::Whitespace;
    throw InputError("unknown tokenization '" + std::string(name) + "' (expected char|whitespace)");
}

std::string_view to_string(Tokenization t) {
    return t == Tokenization::Char ? "char" : "whitespace";
}

CorpusFormat parse_corpus_format(std::string_view name) {
    if (name == "plain") return CorpusFormat::Plain;
    if (name == "counted") return CorpusFormat::Counted;
    throw InputError("unknown corpus format '" + std::string(name) + "' (expected plain|counted)");
}

// ─── Alphabet ────────────────────────────────────────────────

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw InputError("alphabet must contain at least one symbol");
    if (symbols_.size() > 0xFFFF) throw InputError("alphabet too large (max 65535 symbols)");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& s = symbols_[i];
        if (s.empty() || has_whitespace(s)) throw InputError("invalid alphabet symbol '" + s + "'");
        if (!index_.emplace(s, static_cast<Symbol>(i)).second)
            throw InputError("duplicate alphabet symbol '" + s + "'");
    }
}

Alphabet Alphabet::infer(std::vector<std::string> tokens) {
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    return Alphabet(std::move(tokens));
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

// ─── Sequences ───────────────────────────────────────────────

std::strong_ordering compare_symbols(SymbolView a, SymbolView b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::uint64_t hash_symbols(SymbolView s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ s.size();
    for (Symbol sym : s) {
        h ^= sym;
        h *= 0x100000001b3ULL;
    }
    // splitmix64 finalizer
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

std::vector<std::string> split_tokens(std::string_view text, Tokenization t) {
    std::vector<std::string> out;
    if (t == Tokenization::Whitespace) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && has_whitespace(text.substr(i, 1))) ++i;
            std::size_t j = i;
            while (j < text.size() && !has_whitespace(text.substr(j, 1))) ++j;
            if (j > i) out.emplace_back(text.substr(i, j - i));
            i = j;
        }
        return out;
    }
    for (std::size_t i = 0; i < text.size();) {
        std::size_t len = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
        auto cp = text.substr(i, len);
        if (has_whitespace(cp)) throw InputError("whitespace inside a char-tokenized sequence");
        out.emplace_back(cp);
        i += len;
    }
    return out;
}

Sequence encode(std::string_view text, const Alphabet& alphabet, Tokenization t) {
    Sequence seq;
    for (const auto& tok : split_tokens(text, t)) {
        auto sym = alphabet.find(tok);
        if (!sym) throw InputError("unknown symbol '" + tok + "'");
        seq.symbols.push_back(*sym);
    }
    if (seq.symbols.empty()) throw InputError("empty sequence");
    return seq;
}

std::string render(SymbolView s, const Alphabet& alphabet, Tokenization t) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (t == Tokenization::Whitespace && i > 0) out.push_back(' ');
        out += alphabet.symbol(s[i]);
    }
    return out;
}

// ─── SequenceCorpus ──────────────────────────────────────────

SequenceCorpus::SequenceCorpus(Alphabet alphabet, std::vector<CorpusEntry> entries)
    : alphabet_(std::move(alphabet)) {
    for (const auto& e : entries) {
        if (e.count == 0) throw InputError("corpus multiplicities must be >= 1");
        if (e.sequence.length() == 0) throw InputError("corpus sequences must be non-empty");
        check_symbols(e.sequence.view(), alphabet_);
    }
    std::sort(entries.begin(), entries.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.sequence < b.sequence; });
    entries_.reserve(entries.size());
    for (auto& e : entries) {
        total_ += e.count;
        if (!entries_.empty() && entries_.back().sequence == e.sequence)
            entries_.back().count += e.count;
        else
            entries_.push_back(std::move(e));
    }
}

SequenceCorpus SequenceCorpus::from_sequences(Alphabet alphabet, std::vector<Sequence> sequences) {
    std::vector<CorpusEntry> entries;
    entries.reserve(sequences.size());
    for (auto& s : sequences) entries.push_back({std::move(s), 1});
    return SequenceCorpus(std::move(alphabet), std::move(entries));
}

std::uint64_t SequenceCorpus::multiplicity(SymbolView s) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), s, [](const CorpusEntry& e, SymbolView key) {
        return compare_symbols(e.sequence.view(), key) < 0;
    });
    if (it == entries_.end() || compare_symbols(it->sequence.view(), s) != 0) return 0;
    return it->count;
}

bool SequenceCorpus::is_submultiset_of(const SequenceCorpus& other) const {
    return std::all_of(entries_.begin(), entries_.end(), [&](const CorpusEntry& e) {
        return e.count <= other.multiplicity(e.sequence.view());
    });
}

bool SequenceCorpus::operator==(const SequenceCorpus& other) const {
    if (!(alphabet_ == other.alphabet_) || total_ != other.total_ || entries_.size() != other.entries_.size())
        return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].sequence != other.entries_[i].sequence || entries_[i].count != other.entries_[i].count)
            return false;
    return true;
}

void validate_labeled_set(const LabeledSet& set, const Alphabet& alphabet) {
    for (const auto& item : set.items) {
        if (item.label != 0 && item.label != 1)
            throw InputError("labels must be 0 or 1, got " + std::to_string(item.label));
        if (item.sequence.length() == 0) throw InputError("labeled sequences must be non-empty");
        check_symbols(item.sequence.view(), alphabet);
    }
}

// ─── File formats ────────────────────────────────────────────

Alphabet load_alphabet(const std::filesystem::path& path) {
    std::vector<std::string> symbols;
    detail::for_each_line(path, [&](std::string_view line, std::size_t) {
        auto tok = detail::trim(line);
        if (!tok.empty()) symbols.emplace_back(tok);
    });
    return Alphabet(std::move(symbols));
}

void save_alphabet(const Alphabet& alphabet, const std::filesystem::path& path) {
    auto out = detail::open_output(path);
    for (const auto& s : alphabet.symbols()) out << s << '\n';
}

SequenceCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format, Tokenization t,
                           const std::optional<Alphabet>& alphabet) {
    struct Raw {
        std::string text;
        std::uint64_t count;
        std::size_t line;
    };
    std::vector<Raw> raws;
    std::set<std::string, std::less<>> observed;

    detail::for_each_line(path, [&](std::string_view line, std::size_t number) {
        std::uint64_t count = 1;
        std::string_view text = line;
        if (format == CorpusFormat::Counted) {
            auto tab = line.find('\t');
            if (tab == std::string_view::npos)
                throw InputError(detail::where(path, number) + ": expected count<TAB>sequence");
            std::int64_t parsed = 0;
            if (!detail::parse_int(detail::trim(line.substr(0, tab)), parsed))
                throw InputError(detail::where(path, number) + ": malformed count");
            if (parsed < 1) throw InputError(detail::where(path, number) + ": count must be >= 1");
            count = static_cast<std::uint64_t>(parsed);
            text = line.substr(tab + 1);
        }
        text = detail::trim(text);
        if (text.empty()) throw InputError(detail::where(path, number) + ": empty sequence");
        try {
            for (auto& tok : split_tokens(text, t)) {
                if (alphabet) {
                    if (!alphabet->find(tok)) throw InputError("unknown symbol '" + tok + "'");
                } else if (!observed.contains(tok)) {
                    observed.insert(std::move(tok));
                }
            }
        } catch (const InputError& e) {
            throw InputError(detail::where(path, number) + ": " + e.what());
        }
        raws.push_back({std::string(text), count, number});
    });

    Alphabet resolved = alphabet ? *alphabet : Alphabet::infer({observed.begin(), observed.end()});
    std::vector<CorpusEntry> entries;
    entries.reserve(raws.size());
    for (auto& r : raws) entries.push_back({encode(r.text, resolved, t), r.count});
    return SequenceCorpus(std::move(resolved), std::move(entries));
}

void save_corpus(const SequenceCorpus& corpus, const std::filesystem::path& path, Tokenization t) {
    auto out = detail::open_output(path);
    for (const auto& e : corpus.entries())
        out << e.count << '\t' << render(e.sequence.view(), corpus.alphabet(), t) << '\n';
}

LabeledSet load_labeled_set(const std::filesystem::path& path, const Alphabet& alphabet, Tokenization t) {
    LabeledSet set;
    detail::for_each_line(path, [&](std::string_view line, std::size_t number) {
        if (detail::trim(line).empty()) return;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw InputError(detail::where(path, number) + ": expected label<TAB>sequence");
        std::int64_t label = 0;
        if (!detail::parse_int(detail::trim(line.substr(0, tab)), label) || (label != 0 && label != 1))
            throw InputError(detail::where(path, number) + ": label must be 0 or 1");
        try {
            set.items.push_back({encode(detail::trim(line.substr(tab + 1)), alphabet, t), static_cast<int>(label)});
        } catch (const InputError& e) {
            throw InputError(detail::where(path, number) + ": " + e.what());
        }
    });
    return set;
}

void save_labeled_set(const LabeledSet& set, const std::filesystem::path& path, const Alphabet& alphabet,
                      Tokenization t) {
    auto out = detail::open_output(path);
    for (const auto& item : set.items)
        out << item.label << '\t' << render(item.sequence.view(), alphabet, t) << '\n';
}

} // namespace seqmoments

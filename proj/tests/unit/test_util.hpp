#pragma once

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqmoments/corpus.hpp"
#include "seqmoments/rng.hpp"
#include "seqmoments/task.hpp"

namespace testutil {

using namespace seqmoments;

inline Alphabet ab() { return Alphabet({"a", "b"}); }
inline Alphabet abcd() { return Alphabet({"a", "b", "c", "d"}); }

inline Sequence seq(std::string_view text, const Alphabet& a) { return encode(text, a, Tokenization::Char); }

inline SequenceCorpus corpus(const Alphabet& a, std::initializer_list<std::pair<const char*, std::uint64_t>> items) {
    std::vector<CorpusEntry> entries;
    for (const auto& [text, count] : items) entries.push_back({seq(text, a), count});
    return SequenceCorpus(a, std::move(entries));
}

inline LabeledSet labeled(const Alphabet& a, std::initializer_list<std::pair<const char*, int>> items) {
    LabeledSet set;
    for (const auto& [text, label] : items) set.items.push_back({seq(text, a), label});
    return set;
}

// Task over U with positives given explicitly (Y = every U copy of them).
inline TaskBundle task_from(const SequenceCorpus& domain, std::initializer_list<const char*> positives) {
    std::vector<CorpusEntry> target;
    std::vector<Sequence> key;
    for (const char* p : positives) {
        auto s = seq(p, domain.alphabet());
        target.push_back({s, domain.multiplicity(s.view())});
        key.push_back(s);
    }
    std::sort(key.begin(), key.end());
    return TaskBundle{domain, SequenceCorpus(domain.alphabet(), std::move(target)), key, 2, "T", std::nullopt,
                      TargetMultiplicity::Domain, Tokenization::Char};
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("seqmoments_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream(p, std::ios::binary) << content;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Random family data: |alphabet| <= max_alphabet, L <= max_length, at most
// max_windows windows in total, uniform symbols so families overlap.
struct RandomTask {
    FamilyData data;
    std::size_t segment_length;
};

inline RandomTask random_families(Rng& rng, std::size_t max_alphabet, std::size_t max_windows, std::size_t max_length) {
    const std::size_t A = 1 + rng.uniform_below(max_alphabet);
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < A; ++i) symbols.push_back(std::string(1, static_cast<char>('a' + i)));
    const std::size_t L = 1 + rng.uniform_below(max_length);
    FamilyData data{Alphabet(symbols), {}};
    const std::size_t families = 1 + rng.uniform_below(4);
    std::size_t budget = 1 + rng.uniform_below(max_windows);
    for (std::size_t f = 0; f < families && budget > 0; ++f) {
        auto& seqs = data.families["F" + std::to_string(f)];
        const std::size_t count = 1 + rng.uniform_below(16);
        for (std::size_t k = 0; k < count && budget > 0; ++k) {
            std::size_t extra = rng.uniform_below(1 + max_windows / 16);
            extra = std::min(extra, budget - 1);
            Sequence s;
            for (std::size_t i = 0; i < L + extra; ++i) s.symbols.push_back(static_cast<Symbol>(rng.uniform_below(A)));
            budget -= extra + 1;
            seqs.push_back(std::move(s));
        }
    }
    std::erase_if(data.families, [](const auto& kv) { return kv.second.empty(); });
    return {std::move(data), L};
}

inline TaskBundle random_task(Rng& rng, std::size_t max_alphabet, std::size_t max_windows, std::size_t max_length) {
    auto r = random_families(rng, max_alphabet, max_windows, max_length);
    TaskOptions o;
    o.segment_length = r.segment_length;
    return build_task(r.data, o);
}

} // namespace testutil

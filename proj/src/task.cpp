#include "seqmoments/task.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "seqmoments/errors.hpp"
#include "seqmoments/rng.hpp"
#include "text_io.hpp"

namespace seqmoments {

namespace {

using WindowCounts = std::unordered_map<Sequence, std::uint64_t, SequenceHash>;

void add_windows(const Sequence& seq, std::size_t length, WindowCounts& counts) {
    const auto view = seq.view();
    for (std::size_t p = 0; p + length <= view.size(); ++p) ++counts[Sequence(view.subspan(p, length))];
}

std::vector<CorpusEntry> to_entries(const WindowCounts& counts) {
    std::vector<CorpusEntry> entries;
    entries.reserve(counts.size());
    for (const auto& [seq, count] : counts) entries.push_back({seq, count});
    return entries;
}

std::map<std::string, std::string> read_meta(const std::filesystem::path& path) {
    std::map<std::string, std::string> meta;
    detail::for_each_line(path, [&](std::string_view line, std::size_t number) {
        if (detail::trim(line).empty()) return;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos) throw InputError(detail::where(path, number) + ": expected key<TAB>value");
        meta.emplace(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
    });
    return meta;
}

const std::string& require(const std::map<std::string, std::string>& meta, const std::string& key) {
    auto it = meta.find(key);
    if (it == meta.end()) throw InputError("task meta.tsv is missing '" + key + "'");
    return it->second;
}

} // namespace

TargetMultiplicity parse_target_multiplicity(std::string_view name) {
    if (name == "domain") return TargetMultiplicity::Domain;
    if (name == "family") return TargetMultiplicity::Family;
    throw InputError("unknown target multiplicity '" + std::string(name) + "' (expected domain|family)");
}

std::string_view to_string(TargetMultiplicity m) {
    return m == TargetMultiplicity::Domain ? "domain" : "family";
}

bool TaskBundle::is_positive(SymbolView s) const {
    auto it = std::lower_bound(positive_key.begin(), positive_key.end(), s, [](const Sequence& a, SymbolView b) {
        return compare_symbols(a.view(), b) < 0;
    });
    return it != positive_key.end() && compare_symbols(it->view(), s) == 0;
}

FamilyData load_families(const std::filesystem::path& path, Tokenization t, const std::optional<Alphabet>& alphabet) {
    std::vector<std::pair<std::string, std::string>> raws;
    std::set<std::string, std::less<>> observed;
    detail::for_each_line(path, [&](std::string_view line, std::size_t number) {
        if (detail::trim(line).empty()) return;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw InputError(detail::where(path, number) + ": expected familyId<TAB>sequence");
        auto id = detail::trim(line.substr(0, tab));
        auto text = detail::trim(line.substr(tab + 1));
        if (id.empty() || text.empty()) throw InputError(detail::where(path, number) + ": empty field");
        try {
            for (auto& tok : split_tokens(text, t)) {
                if (alphabet && !alphabet->find(tok)) throw InputError("unknown symbol '" + tok + "'");
                if (!alphabet) observed.insert(std::move(tok));
            }
        } catch (const InputError& e) {
            throw InputError(detail::where(path, number) + ": " + e.what());
        }
        raws.emplace_back(std::string(id), std::string(text));
    });
    if (raws.empty()) throw InputError(path.string() + ": no families");

    FamilyData data{alphabet ? *alphabet : Alphabet::infer({observed.begin(), observed.end()}), {}};
    for (auto& [id, text] : raws) data.families[id].push_back(encode(text, data.alphabet, t));
    return data;
}

void save_families(const FamilyData& data, const std::filesystem::path& path, Tokenization t) {
    auto out = detail::open_output(path);
    for (const auto& [id, seqs] : data.families)
        for (const auto& s : seqs) out << id << '\t' << render(s.view(), data.alphabet, t) << '\n';
}

TaskBundle build_task(const FamilyData& data, const TaskOptions& options) {
    const std::size_t L = options.segment_length;
    if (L == 0) throw InputError("segment length must be >= 1");
    if (data.families.empty()) throw InputError("empty family set");
    if (options.target_family && !data.families.contains(*options.target_family))
        throw InputError("target family '" + *options.target_family + "' not present");
    if (options.validation_family) {
        if (data.families.size() < 2) throw InputError("a validation family needs at least two families");
        if (!data.families.contains(*options.validation_family))
            throw InputError("validation family '" + *options.validation_family + "' not present");
    }

    WindowCounts domain;
    std::map<std::string, WindowCounts> per_family;
    for (const auto& [id, seqs] : data.families) {
        auto& fam = per_family[id];
        for (const auto& s : seqs) {
            if (s.length() < L)
                throw InputError("family '" + id + "' has a sequence of length " + std::to_string(s.length()) +
                                 " shorter than the segment length " + std::to_string(L));
            add_windows(s, L, fam);
        }
        for (const auto& [w, c] : fam) domain[w] += c;
    }

    // Target windows under the configured multiplicity rule.
    auto target_counts = [&](const WindowCounts& fam) {
        if (options.multiplicity == TargetMultiplicity::Family) return fam;
        WindowCounts out;
        for (const auto& [w, c] : fam) out.emplace(w, domain.at(w));
        return out;
    };
    auto total_of = [](const WindowCounts& counts) {
        std::uint64_t t = 0;
        for (const auto& [w, c] : counts) t += c;
        return t;
    };

    std::string target_id;
    if (options.target_family) {
        target_id = *options.target_family;
    } else {
        std::uint64_t best = 0;
        bool first = true;
        for (const auto& [id, fam] : per_family) {  // map order: ties keep the smaller id
            const std::uint64_t size = total_of(target_counts(fam));
            if (first || size < best) {
                best = size;
                target_id = id;
                first = false;
            }
        }
    }
    if (options.validation_family && *options.validation_family == target_id)
        throw InputError("validation family must differ from the target family");

    auto target = target_counts(per_family.at(target_id));
    TaskBundle task{SequenceCorpus(data.alphabet, to_entries(domain)),
                    SequenceCorpus(data.alphabet, to_entries(target)),
                    {},
                    L,
                    target_id,
                    options.validation_family,
                    options.multiplicity,
                    options.tokenization};
    for (const auto& e : task.target.entries()) task.positive_key.push_back(e.sequence);
    return task;
}

LabeledSet sample_training_set(const TaskBundle& task, std::size_t m, std::uint64_t seed) {
    if (m == 0) throw InputError("training-set size m must be >= 1");
    const auto entries = task.domain.entries();
    if (entries.empty()) throw InputError("cannot sample from an empty domain");

    std::vector<std::uint64_t> cumulative;
    cumulative.reserve(entries.size());
    std::uint64_t running = 0;
    for (const auto& e : entries) cumulative.push_back(running += e.count);

    Rng rng(seed);
    LabeledSet set;
    set.items.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t r = rng.uniform_below(running);
        const auto idx = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
        const auto& seq = entries[idx].sequence;
        set.items.push_back({seq, task.is_positive(seq.view()) ? 1 : 0});
    }
    return set;
}

void save_task(const TaskBundle& task, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_corpus(task.domain, dir / "U.counted", task.tokenization);
    save_corpus(task.target, dir / "Y.counted", task.tokenization);
    {
        auto out = detail::open_output(dir / "positive_key.txt");
        for (const auto& s : task.positive_key) out << render(s.view(), task.alphabet(), task.tokenization) << '\n';
    }
    auto out = detail::open_output(dir / "meta.tsv");
    std::string alphabet;
    for (const auto& s : task.alphabet().symbols()) {
        if (!alphabet.empty()) alphabet.push_back(' ');
        alphabet += s;
    }
    out << "segment_length\t" << task.segment_length << '\n'
        << "target_family\t" << task.target_family << '\n'
        << "validation_family\t" << task.validation_family.value_or("-") << '\n'
        << "sparsity\t" << detail::format_double(task.sparsity()) << '\n'
        << "domain_total\t" << task.domain.total() << '\n'
        << "target_total\t" << task.target.total() << '\n'
        << "domain_distinct\t" << task.domain.distinct() << '\n'
        << "target_distinct\t" << task.target.distinct() << '\n'
        << "target_multiplicity\t" << to_string(task.multiplicity) << '\n'
        << "tokenization\t" << to_string(task.tokenization) << '\n'
        << "alphabet\t" << alphabet << '\n';
}

TaskBundle load_task(const std::filesystem::path& dir) {
    const auto meta = read_meta(dir / "meta.tsv");
    const Tokenization t = parse_tokenization(require(meta, "tokenization"));
    std::vector<std::string> symbols;
    {
        std::istringstream in(require(meta, "alphabet"));
        for (std::string s; in >> s;) symbols.push_back(s);
    }
    Alphabet alphabet(std::move(symbols));

    std::int64_t L = 0;
    if (!detail::parse_int(require(meta, "segment_length"), L) || L < 1)
        throw InputError("task meta.tsv: invalid segment_length");

    auto domain = load_corpus(dir / "U.counted", CorpusFormat::Counted, t, alphabet);
    auto target = load_corpus(dir / "Y.counted", CorpusFormat::Counted, t, alphabet);
    if (domain.empty()) throw InputError("task domain U is empty");
    if (!target.is_submultiset_of(domain)) throw InputError("task Y is not a sub-multiset of U");

    std::vector<Sequence> key;
    detail::for_each_line(dir / "positive_key.txt", [&](std::string_view line, std::size_t) {
        auto text = detail::trim(line);
        if (!text.empty()) key.push_back(encode(text, alphabet, t));
    });
    std::sort(key.begin(), key.end());
    std::vector<Sequence> expected;
    for (const auto& e : target.entries()) expected.push_back(e.sequence);
    if (key != expected) throw InputError("positive_key.txt does not match the distinct sequences of Y");

    const auto& validation = require(meta, "validation_family");
    return TaskBundle{std::move(domain),
                      std::move(target),
                      std::move(key),
                      static_cast<std::size_t>(L),
                      require(meta, "target_family"),
                      validation == "-" ? std::nullopt : std::optional<std::string>(validation),
                      parse_target_multiplicity(require(meta, "target_multiplicity")),
                      t};
}

} // namespace seqmoments

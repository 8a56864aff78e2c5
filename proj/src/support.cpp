#include "seqmoments/support.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "seqmoments/errors.hpp"
#include "text_io.hpp"

namespace seqmoments {

namespace {

constexpr std::uint32_t kEmpty = ~std::uint32_t{0};

std::size_t capacity_for(std::size_t count) {
    return std::bit_ceil(std::max<std::size_t>(16, count * 2));
}

// Growable set of distinct windows in insertion order.
class WindowSet {
public:
    explicit WindowSet(std::size_t n) : n_(n), slots_(capacity_for(0), kEmpty) {}

    void insert(SymbolView w) {
        if ((count_ + 1) * 2 > slots_.size()) grow();
        std::size_t mask = slots_.size() - 1;
        for (std::size_t i = hash_symbols(w) & mask;; i = (i + 1) & mask) {
            if (slots_[i] == kEmpty) {
                slots_[i] = static_cast<std::uint32_t>(count_++);
                flat_.insert(flat_.end(), w.begin(), w.end());
                return;
            }
            if (std::equal(w.begin(), w.end(), flat_.begin() + slots_[i] * n_)) return;
        }
    }

    std::size_t count() const { return count_; }
    std::vector<Symbol>& flat() { return flat_; }

private:
    void grow() {
        std::vector<std::uint32_t> next(slots_.size() * 2, kEmpty);
        const std::size_t mask = next.size() - 1;
        for (std::uint32_t idx = 0; idx < count_; ++idx) {
            SymbolView w(flat_.data() + idx * n_, n_);
            std::size_t i = hash_symbols(w) & mask;
            while (next[i] != kEmpty) i = (i + 1) & mask;
            next[i] = idx;
        }
        slots_ = std::move(next);
    }

    std::size_t n_;
    std::size_t count_ = 0;
    std::vector<Symbol> flat_;
    std::vector<std::uint32_t> slots_;
};

std::vector<Symbol> sort_unique_flat(std::size_t n, const std::vector<Symbol>& flat) {
    const std::size_t count = flat.size() / n;
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    auto at = [&](std::uint32_t i) { return SymbolView(flat.data() + std::size_t(i) * n, n); };
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return compare_symbols(at(a), at(b)) < 0; });
    std::vector<Symbol> out;
    out.reserve(flat.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && compare_symbols(at(order[k]), at(order[k - 1])) == 0) continue;
        auto w = at(order[k]);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

} // namespace

SupportSet::SupportSet(std::size_t n, std::vector<Sequence> members) : n_(n) {
    if (n == 0) throw InputError("moment length n must be >= 1");
    std::vector<Symbol> flat;
    flat.reserve(members.size() * n);
    for (const auto& m : members) {
        if (m.length() != n)
            throw ConsistencyError("support member of length " + std::to_string(m.length()) +
                                   " in a length-" + std::to_string(n) + " support");
        flat.insert(flat.end(), m.symbols.begin(), m.symbols.end());
    }
    flat_ = sort_unique_flat(n, flat);
    build_index();
}

SupportSet::SupportSet(std::size_t n, std::vector<Symbol> flat_sorted_unique) : n_(n), flat_(std::move(flat_sorted_unique)) {
    build_index();
}

void SupportSet::build_index() {
    if (size() >= kEmpty) throw InputError("support too large");
    slots_.assign(capacity_for(size()), kEmpty);
    const std::size_t mask = slots_.size() - 1;
    for (std::uint32_t idx = 0; idx < size(); ++idx) {
        std::size_t i = hash_symbols(member(idx)) & mask;
        while (slots_[i] != kEmpty) i = (i + 1) & mask;
        slots_[i] = idx;
    }
}

std::optional<std::uint32_t> SupportSet::index_of(SymbolView window) const {
    if (window.size() != n_) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash_symbols(window) & mask;; i = (i + 1) & mask) {
        const std::uint32_t idx = slots_[i];
        if (idx == kEmpty) return std::nullopt;
        if (std::equal(window.begin(), window.end(), flat_.begin() + std::size_t(idx) * n_)) return idx;
    }
}

SupportHandle enumerate_support(const SequenceCorpus& corpus, std::size_t n) {
    if (n == 0) throw InputError("moment length n must be >= 1");
    WindowSet windows(n);
    for (const auto& e : corpus.entries()) {
        const auto x = e.sequence.view();
        for (std::size_t p = 0; p + n <= x.size(); ++p) windows.insert(x.subspan(p, n));
    }
    return SupportHandle(new SupportSet(n, sort_unique_flat(n, windows.flat())));
}

std::size_t count_occurrences(SymbolView z, SymbolView x) {
    if (z.empty() || z.size() > x.size()) return 0;
    std::size_t count = 0;
    for (std::size_t p = 0; p + z.size() <= x.size(); ++p)
        if (std::equal(z.begin(), z.end(), x.begin() + p)) ++count;
    return count;
}

void save_support(const SupportSet& support, const std::filesystem::path& path, const Alphabet& alphabet,
                  Tokenization t) {
    auto out = detail::open_output(path);
    for (std::size_t i = 0; i < support.size(); ++i) out << render(support.member(i), alphabet, t) << '\n';
}

} // namespace seqmoments

#include "dcgame/alphabet.hpp"

#include <algorithm>
#include <limits>

#include "dcgame/errors.hpp"

namespace dcgame {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw InputError("alphabet must be nonempty");
    for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
        auto [it, inserted] = index_.emplace(symbols_[static_cast<size_t>(i)], i);
        if (!inserted) throw InputError("duplicate alphabet label: " + symbols_[static_cast<size_t>(i)]);
    }
}

Alphabet Alphabet::integers(int n) {
    if (n <= 0) throw InputError("alphabet size must be positive");
    std::vector<std::string> s;
    s.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) s.push_back(std::to_string(i));
    return Alphabet(std::move(s));
}

Alphabet Alphabet::tuple(const Alphabet& a, const Alphabet& b) {
    std::vector<std::string> s;
    s.reserve(static_cast<size_t>(a.size()) * static_cast<size_t>(b.size()));
    for (const auto& x : a.symbols())
        for (const auto& y : b.symbols()) s.push_back(x + "," + y);
    return Alphabet(std::move(s));
}

Alphabet Alphabet::power(const Alphabet& a, int n) {
    if (n <= 0) throw InputError("power requires n >= 1");
    Alphabet out = a;
    for (int i = 1; i < n; ++i) out = tuple(out, a);
    return out;
}

std::optional<int> Alphabet::find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Alphabet::index_of(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw InputError("unknown symbol: " + s);
    return it->second;
}

std::uint64_t rank_sequence(std::span<const int> seq, int base) {
    std::uint64_t r = 0;
    for (int v : seq) {
        if (v < 0 || v >= base) throw InputError("sequence entry out of range");
        r = r * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(v);
    }
    return r;
}

std::vector<int> unrank_sequence(std::uint64_t rank, int length, int base) {
    std::vector<int> seq(static_cast<size_t>(length), 0);
    for (int i = length - 1; i >= 0; --i) {
        seq[static_cast<size_t>(i)] = static_cast<int>(rank % static_cast<std::uint64_t>(base));
        rank /= static_cast<std::uint64_t>(base);
    }
    return seq;
}

std::string sequence_label(std::span<const int> seq, const Alphabet& alphabet) {
    std::string out;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) out += ",";
        out += alphabet.symbol(seq[i]);
    }
    return out;
}

namespace {

// Symbols of tuple alphabets contain commas themselves, so the label grammar
// is ambiguous under a plain split. Backtracking over symbol matches resolves
// it (longest symbol first keeps tuple symbols intact).
bool match_label(const std::string& label, size_t pos, const Alphabet& alphabet,
                 const std::vector<int>& by_length, std::vector<int>& out) {
    if (pos == label.size()) return true;
    for (int idx : by_length) {
        const std::string& sym = alphabet.symbol(idx);
        if (label.compare(pos, sym.size(), sym) != 0) continue;
        size_t next = pos + sym.size();
        if (next < label.size()) {
            if (label[next] != ',') continue;
            ++next;
        }
        out.push_back(idx);
        if (match_label(label, next, alphabet, by_length, out)) return true;
        out.pop_back();
    }
    return false;
}

}  // namespace

std::vector<int> parse_sequence_label(const std::string& label, const Alphabet& alphabet) {
    std::vector<int> out;
    if (label.empty()) return out;
    std::vector<int> by_length(static_cast<size_t>(alphabet.size()));
    for (int i = 0; i < alphabet.size(); ++i) by_length[static_cast<size_t>(i)] = i;
    std::stable_sort(by_length.begin(), by_length.end(), [&](int a, int b) {
        return alphabet.symbol(a).size() > alphabet.symbol(b).size();
    });
    if (!match_label(label, 0, alphabet, by_length, out))
        throw InputError("cannot parse sequence label: " + label);
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    const std::uint64_t cap = std::uint64_t(1) << 62;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) throw ResourceLimit("enumeration size overflows cap");
        r *= base;
    }
    return r;
}

}  // namespace dcgame

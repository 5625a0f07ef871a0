#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dcgame {

/// Ordered finite set of distinct symbol labels. The order is fixed at
/// construction and indexes every vector over the alphabet.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    /// Labels "0", "1", ..., "n-1".
    static Alphabet integers(int n);
    /// Pair alphabet with labels "y,z", ordered row-major (a-major).
    static Alphabet tuple(const Alphabet& a, const Alphabet& b);
    /// n-fold tuple of a with itself ("y1,y2,...,yn").
    static Alphabet power(const Alphabet& a, int n);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int i) const { return symbols_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    std::optional<int> find(std::string_view s) const;
    /// Index of a label; throws InputError if absent.
    int index_of(const std::string& s) const;

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

// Sequences y^n are ranked numerically with the first symbol most
// significant, so rank order equals lexicographic order.
std::uint64_t rank_sequence(std::span<const int> seq, int base);
std::vector<int> unrank_sequence(std::uint64_t rank, int length, int base);

/// "a,b,c" for a sequence of symbol indices; empty sequence gives "".
std::string sequence_label(std::span<const int> seq, const Alphabet& alphabet);
std::vector<int> parse_sequence_label(const std::string& label, const Alphabet& alphabet);

/// base^exp with overflow guard (throws ResourceLimit past 2^62).
std::uint64_t checked_pow(std::uint64_t base, int exp);

}  // namespace dcgame

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqm {

using Symbol = std::uint8_t;

/// Generator name, parameters and seed. Ordered so serialization is stable.
using Provenance = std::map<std::string, std::string>;

/// Finite symbol string over {0, ..., alphabet-1}. Immutable once built.
class Sequence {
public:
    Sequence() = default;
    Sequence(std::vector<Symbol> symbols, unsigned alphabet = 2, Provenance provenance = {});

    /// Digits '0'..'9' only; whitespace is not accepted here (see sequence_io for files).
    static Sequence from_string(std::string_view digits, unsigned alphabet = 2);

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    unsigned alphabet() const noexcept { return alphabet_; }
    bool is_binary() const noexcept { return alphabet_ == 2; }
    const Provenance& provenance() const noexcept { return provenance_; }

    Sequence prefix(std::size_t n) const;
    Sequence with_provenance(Provenance provenance) const;

    /// One digit per symbol; requires alphabet <= 10.
    std::string to_string() const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<Symbol> symbols_;
    unsigned alphabet_ = 2;
    Provenance provenance_;
};

/// Throws InvalidArgument unless the sequence is binary and has at least n symbols.
void require_binary_prefix(const Sequence& seq, std::size_t n);
void require_prefix(const Sequence& seq, std::size_t n);

}  // namespace seqm

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqm/sequence.hpp"

namespace seqm::detail {

/// Little-endian packed bit string: bit i lives in word i / 64 at position i % 64.
class PackedBits {
public:
    PackedBits() = default;
    explicit PackedBits(std::size_t bits) : bits_(bits), words_(bits / 64 + 2, 0) {}

    static PackedBits from_symbols(std::span<const Symbol> symbols) {
        PackedBits out(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (symbols[i] & 1) out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        }
        return out;
    }

    std::size_t size() const noexcept { return bits_; }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    /// 64 bits starting at `offset`; bits past the end read as zero.
    std::uint64_t extract(std::size_t offset) const noexcept {
        const std::size_t w = offset >> 6;
        const unsigned shift = offset & 63;
        if (w >= words_.size()) return 0;
        std::uint64_t lo = words_[w] >> shift;
        if (shift != 0 && w + 1 < words_.size()) lo |= words_[w + 1] << (64 - shift);
        return lo;
    }

    /// this ^= other << shift, restricted to this->size() bits.
    void xor_shifted(const PackedBits& other, std::size_t shift) noexcept {
        const std::size_t word_shift = shift >> 6;
        const unsigned bit_shift = shift & 63;
        for (std::size_t w = words_.size(); w-- > word_shift;) {
            const std::size_t src = w - word_shift;
            std::uint64_t v = src < other.words_.size() ? other.words_[src] << bit_shift : 0;
            if (bit_shift != 0 && src >= 1 && src - 1 < other.words_.size()) {
                v |= other.words_[src - 1] >> (64 - bit_shift);
            }
            words_[w] ^= v;
        }
        clear_tail();
    }

    /// Parity of popcount(this & other-window starting at offset) over the first `bits` bits.
    bool masked_parity(const PackedBits& other, std::size_t offset, std::size_t bits) const noexcept {
        std::uint64_t acc = 0;
        std::size_t i = 0;
        for (std::size_t w = 0; i + 64 <= bits; ++w, i += 64) acc ^= words_[w] & other.extract(offset + i);
        if (i < bits) {
            const std::uint64_t mask = (std::uint64_t{1} << (bits - i)) - 1;
            acc ^= words_[i >> 6] & other.extract(offset + i) & mask;
        }
        return std::popcount(acc) & 1;
    }

private:
    void clear_tail() noexcept {
        const std::size_t full = bits_ >> 6;
        if (full < words_.size()) {
            words_[full] &= (bits_ & 63) ? ((std::uint64_t{1} << (bits_ & 63)) - 1) : 0;
            for (std::size_t w = full + 1; w < words_.size(); ++w) words_[w] = 0;
        }
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace seqm::detail

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "seqm/sequence.hpp"

namespace seqm {

/// Shortest linear recurrence s_{i+L} = sum_j coefficients[j] * s_{i+j} (mod 2)
/// valid for 0 <= i <= N-L-1. `coefficients` has exactly `length` entries.
struct LinearRecurrence {
    std::size_t length = 0;
    std::vector<Symbol> coefficients;

    /// True iff the recurrence reproduces symbols[length..n-1] from earlier terms.
    bool generates(std::span<const Symbol> symbols, std::size_t n) const;
};

/// Berlekamp-Massey over GF(2) on the first n symbols.
LinearRecurrence berlekamp_massey(const Sequence& seq, std::size_t n);

/// N-th linear complexity: 0 for an all-zero prefix, N for 0...01.
std::size_t linear_complexity(const Sequence& seq, std::size_t n);

/// N-th maximum-order complexity: the smallest M >= 1 such that every
/// M-window s_i..s_{i+M-1}, 0 <= i <= N-M-1, has a single successor.
/// Works for any alphabet; M(S, 1) = 1.
std::size_t max_order_complexity(const Sequence& seq, std::size_t n);

/// Online maximum-order complexity over a suffix automaton.
///
/// After pushing s_0..s_{n-1}, the automaton holds every substring of that
/// prefix. When s_n arrives, let v be the suffix-link parent of the state of
/// the whole prefix, i.e. the longest suffix u that also occurs earlier. If v
/// has no transition on s_n then u was previously followed by another symbol
/// and u is a conflicting window of length len(v). Once every window longer
/// than the current conflict depth has a unique successor, every state that
/// deep has exactly one out-edge, so no other state can raise the depth and
/// the check above is complete. Amortized O(1) per symbol beyond the
/// automaton construction itself.
class MaxOrderTracker {
public:
    explicit MaxOrderTracker(unsigned alphabet, std::size_t expected_length = 0);

    void push(Symbol symbol);
    std::size_t size() const noexcept { return size_; }
    /// Maximum-order complexity of everything pushed so far (1 for length <= 1).
    std::size_t complexity() const noexcept { return conflict_depth_ + 1; }

private:
    int transition(int state, Symbol symbol) const { return next_[static_cast<std::size_t>(state) * alphabet_ + symbol]; }
    void set_transition(int state, Symbol symbol, int target) {
        next_[static_cast<std::size_t>(state) * alphabet_ + symbol] = target;
    }
    int new_state(std::size_t len, int link);
    int clone_state(int source, std::size_t len);
    void extend(Symbol symbol);

    unsigned alphabet_;
    std::vector<std::size_t> len_;
    std::vector<int> link_;
    std::vector<int> next_;
    int last_ = 0;
    std::size_t size_ = 0;
    std::size_t conflict_depth_ = 0;
};

enum class ComplexityKind { linear, maximum_order };

std::string_view to_string(ComplexityKind kind);

/// values[n-1] is the measure of the length-n prefix.
struct ComplexityProfile {
    ComplexityKind kind = ComplexityKind::linear;
    std::vector<std::size_t> values;
    Provenance provenance;
};

ComplexityProfile linear_complexity_profile(const Sequence& seq, std::size_t n);
ComplexityProfile max_order_profile(const Sequence& seq, std::size_t n);

}  // namespace seqm

#include "seqm/complexity.hpp"

#include <string>

#include "bitpack.hpp"
#include "seqm/error.hpp"

namespace seqm {

namespace {

void require_positive(std::size_t n) {
    if (n == 0) fail(ErrorCode::invalid_argument, "N must be positive");
}

// Runs Berlekamp-Massey and reports L after every prefix through `on_step`.
template <typename OnStep>
LinearRecurrence run_berlekamp_massey(std::span<const Symbol> symbols, std::size_t n, OnStep&& on_step) {
    using detail::PackedBits;

    // Reversed copy so s_{k-i} for i = 0..L is a contiguous window.
    PackedBits reversed(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (symbols[n - 1 - j] & 1) reversed.set(j);
    }
    PackedBits connection(n + 1);  // C(x), C_0 = 1
    PackedBits previous(n + 1);    // B(x)
    connection.set(0);
    previous.set(0);
    std::size_t length = 0;
    std::size_t shift = 1;

    for (std::size_t k = 0; k < n; ++k) {
        const bool discrepancy = connection.masked_parity(reversed, n - 1 - k, length + 1);
        if (!discrepancy) {
            ++shift;
        } else if (2 * length <= k) {
            PackedBits saved = connection;
            connection.xor_shifted(previous, shift);
            length = k + 1 - length;
            previous = std::move(saved);
            shift = 1;
        } else {
            connection.xor_shifted(previous, shift);
            ++shift;
        }
        on_step(k + 1, length);
    }

    LinearRecurrence out;
    out.length = length;
    out.coefficients.assign(length, 0);
    for (std::size_t j = 0; j < length; ++j) out.coefficients[j] = connection.get(length - j) ? 1 : 0;
    return out;
}

}  // namespace

bool LinearRecurrence::generates(std::span<const Symbol> symbols, std::size_t n) const {
    if (coefficients.size() != length || n > symbols.size()) return false;
    if (length == 0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (symbols[i] != 0) return false;
        }
        return true;
    }
    for (std::size_t i = 0; i + length < n; ++i) {
        unsigned acc = 0;
        for (std::size_t j = 0; j < length; ++j) acc ^= coefficients[j] & symbols[i + j];
        if (acc != symbols[i + length]) return false;
    }
    return true;
}

LinearRecurrence berlekamp_massey(const Sequence& seq, std::size_t n) {
    require_binary_prefix(seq, n);
    return run_berlekamp_massey(seq.symbols(), n, [](std::size_t, std::size_t) {});
}

std::size_t linear_complexity(const Sequence& seq, std::size_t n) {
    require_positive(n);
    return berlekamp_massey(seq, n).length;
}

MaxOrderTracker::MaxOrderTracker(unsigned alphabet, std::size_t expected_length) : alphabet_(alphabet) {
    if (alphabet < 2) fail(ErrorCode::invalid_argument, "alphabet must be at least 2");
    len_.reserve(2 * expected_length + 1);
    link_.reserve(2 * expected_length + 1);
    next_.reserve((2 * expected_length + 1) * alphabet);
    last_ = new_state(0, -1);
}

int MaxOrderTracker::new_state(std::size_t len, int link) {
    len_.push_back(len);
    link_.push_back(link);
    next_.insert(next_.end(), alphabet_, -1);
    return static_cast<int>(len_.size() - 1);
}

int MaxOrderTracker::clone_state(int source, std::size_t len) {
    const int clone = new_state(len, link_[source]);
    for (unsigned a = 0; a < alphabet_; ++a) set_transition(clone, static_cast<Symbol>(a), transition(source, static_cast<Symbol>(a)));
    return clone;
}

void MaxOrderTracker::push(Symbol symbol) {
    if (symbol >= alphabet_) {
        fail(ErrorCode::symbol_out_of_range, "symbol " + std::to_string(symbol) + " not below alphabet size");
    }
    const int parent = link_[last_];
    if (parent >= 0 && len_[parent] > conflict_depth_ && transition(parent, symbol) < 0) {
        conflict_depth_ = len_[parent];
    }
    extend(symbol);
    ++size_;
}

void MaxOrderTracker::extend(Symbol symbol) {
    const int cur = new_state(len_[last_] + 1, -1);
    int p = last_;
    while (p >= 0 && transition(p, symbol) < 0) {
        set_transition(p, symbol, cur);
        p = link_[p];
    }
    if (p < 0) {
        link_[cur] = 0;
    } else {
        const int q = transition(p, symbol);
        if (len_[p] + 1 == len_[q]) {
            link_[cur] = q;
        } else {
            const int clone = clone_state(q, len_[p] + 1);
            while (p >= 0 && transition(p, symbol) == q) {
                set_transition(p, symbol, clone);
                p = link_[p];
            }
            link_[q] = clone;
            link_[cur] = clone;
        }
    }
    last_ = cur;
}

std::size_t max_order_complexity(const Sequence& seq, std::size_t n) {
    require_positive(n);
    require_prefix(seq, n);
    MaxOrderTracker tracker(seq.alphabet(), n);
    for (std::size_t i = 0; i < n; ++i) tracker.push(seq[i]);
    return tracker.complexity();
}

std::string_view to_string(ComplexityKind kind) {
    return kind == ComplexityKind::linear ? "linear" : "maximum_order";
}

ComplexityProfile linear_complexity_profile(const Sequence& seq, std::size_t n) {
    require_positive(n);
    require_binary_prefix(seq, n);
    ComplexityProfile profile{ComplexityKind::linear, std::vector<std::size_t>(n), seq.provenance()};
    run_berlekamp_massey(seq.symbols(), n,
                         [&](std::size_t prefix, std::size_t length) { profile.values[prefix - 1] = length; });
    return profile;
}

ComplexityProfile max_order_profile(const Sequence& seq, std::size_t n) {
    require_positive(n);
    require_prefix(seq, n);
    ComplexityProfile profile{ComplexityKind::maximum_order, std::vector<std::size_t>(n), seq.provenance()};
    MaxOrderTracker tracker(seq.alphabet(), n);
    for (std::size_t i = 0; i < n; ++i) {
        tracker.push(seq[i]);
        profile.values[i] = tracker.complexity();
    }
    return profile;
}

}  // namespace seqm

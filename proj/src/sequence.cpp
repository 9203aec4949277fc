#include "seqm/sequence.hpp"

#include "seqm/error.hpp"

namespace seqm {

Sequence::Sequence(std::vector<Symbol> symbols, unsigned alphabet, Provenance provenance)
    : symbols_(std::move(symbols)), alphabet_(alphabet), provenance_(std::move(provenance)) {
    if (alphabet_ < 2 || alphabet_ > 256) {
        fail(ErrorCode::invalid_argument, "alphabet size must lie in [2, 256], got " + std::to_string(alphabet_));
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] >= alphabet_) {
            fail(ErrorCode::symbol_out_of_range, "symbol " + std::to_string(symbols_[i]) + " at position " +
                                                     std::to_string(i) + " is not below m=" + std::to_string(alphabet_));
        }
    }
}

Sequence Sequence::from_string(std::string_view digits, unsigned alphabet) {
    std::vector<Symbol> symbols;
    symbols.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') {
            fail(ErrorCode::parse_error, std::string("non-digit character '") + c + "'");
        }
        symbols.push_back(static_cast<Symbol>(c - '0'));
    }
    return Sequence(std::move(symbols), alphabet);
}

Sequence Sequence::prefix(std::size_t n) const {
    require_prefix(*this, n);
    Sequence out = *this;
    out.symbols_.resize(n);
    return out;
}

Sequence Sequence::with_provenance(Provenance provenance) const {
    Sequence out = *this;
    out.provenance_ = std::move(provenance);
    return out;
}

std::string Sequence::to_string() const {
    if (alphabet_ > 10) {
        fail(ErrorCode::unsupported, "digit rendering requires m <= 10");
    }
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
}

void require_prefix(const Sequence& seq, std::size_t n) {
    if (n > seq.size()) {
        fail(ErrorCode::invalid_argument,
             "N=" + std::to_string(n) + " exceeds sequence length " + std::to_string(seq.size()));
    }
}

void require_binary_prefix(const Sequence& seq, std::size_t n) {
    if (!seq.is_binary()) {
        fail(ErrorCode::invalid_argument, "operation requires a binary sequence, got m=" + std::to_string(seq.alphabet()));
    }
    require_prefix(seq, n);
}

}  // namespace seqm

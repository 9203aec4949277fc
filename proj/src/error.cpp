#include "seqm/error.hpp"

namespace seqm {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "InvalidArgument";
        case ErrorCode::not_prime: return "NotPrime";
        case ErrorCode::symbol_out_of_range: return "SymbolOutOfRange";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::empty_input: return "EmptyInput";
        case ErrorCode::budget_exceeded: return "BudgetExceeded";
        case ErrorCode::unsupported: return "Unsupported";
        case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace seqm

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seqm {

enum class ErrorCode {
    invalid_argument,
    not_prime,
    symbol_out_of_range,
    parse_error,
    empty_input,
    budget_exceeded,
    unsupported,
    io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace seqm

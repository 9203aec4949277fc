#include "seqm/number_theory.hpp"

#include <array>
#include <string>

#include "seqm/error.hpp"

namespace seqm {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % modulus);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus == 1) return 0;
    std::uint64_t result = 1;
    base %= modulus;
    while (exponent > 0) {
        if (exponent & 1) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t w : witnesses) {
        if (n % w == 0) return n == w;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // The first twelve primes as bases are exact below 3.3e24.
    for (std::uint64_t a : witnesses) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int quadratic_character(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

OddPrime::OddPrime(std::uint64_t value) : value_(value) {
    if (value == 2) fail(ErrorCode::invalid_argument, "p = 2 is not an odd prime");
    if (!is_prime(value)) fail(ErrorCode::not_prime, std::to_string(value) + " is not prime");
}

PrimePair::PrimePair(std::uint64_t p_value, std::uint64_t q_value) : p(p_value), q(q_value) {
    if (p_value == q_value) fail(ErrorCode::invalid_argument, "two-prime generator needs p != q");
    if (p_value > q_value) fail(ErrorCode::invalid_argument, "two-prime generator needs p < q");
}

}  // namespace seqm

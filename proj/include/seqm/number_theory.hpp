#pragma once

#include <cstdint>

namespace seqm {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Legendre symbol (a/p) via Euler's criterion: 0 if p | a, else +1 or -1.
int quadratic_character(std::uint64_t a, std::uint64_t p);

/// Odd prime, validated at construction (throws NotPrime or InvalidArgument for 2).
class OddPrime {
public:
    explicit OddPrime(std::uint64_t value);
    std::uint64_t value() const noexcept { return value_; }
    operator std::uint64_t() const noexcept { return value_; }

private:
    std::uint64_t value_;
};

/// Pair of odd primes p < q for the two-prime generator.
struct PrimePair {
    PrimePair(std::uint64_t p, std::uint64_t q);
    OddPrime p;
    OddPrime q;
};

}  // namespace seqm

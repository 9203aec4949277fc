#pragma once

#include <cstddef>
#include <cstdint>

#include "seqm/sequence.hpp"

namespace seqm {

/// l_i = 1 iff i mod p is a quadratic non-residue, else 0 (also for p | i). Period p.
Sequence gen_legendre(std::uint64_t p, std::size_t length);

/// Two-prime generator of period pq. For gcd(i, pq) = 1, t_i = 0 iff the
/// product of the quadratic characters mod p and mod q is +1. Remaining
/// indices: t_i = 0 when p | i (this includes i = 0 mod pq) and t_i = 1 when
/// q | i but p does not divide i.
Sequence gen_two_prime(std::uint64_t p, std::uint64_t q, std::size_t length);

/// Index set on which the 4-term relation t_i + t_{i+p} + t_{i+q} + t_{i+p+q} = 0
/// follows from multiplicativity of the characters: i, i+p and i+q (hence
/// i+p+q) are all coprime to pq.
bool two_prime_identity_index_is_safe(std::uint64_t i, std::uint64_t p, std::uint64_t q);

/// Uniform i.i.d. symbols from mt19937_64 seeded with `seed`; reproducible
/// across platforms (no std distributions involved).
Sequence gen_random(unsigned m, std::size_t length, std::uint64_t seed);

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace seqm

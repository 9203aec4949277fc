#include "seqm/generators.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "seqm/error.hpp"
#include "seqm/number_theory.hpp"

namespace seqm {

namespace {

void require_length(std::size_t length) {
    if (length == 0) fail(ErrorCode::invalid_argument, "length must be positive");
}

}  // namespace

Sequence gen_legendre(std::uint64_t p_value, std::size_t length) {
    const OddPrime p(p_value);
    require_length(length);

    std::vector<Symbol> period(p.value());
    for (std::uint64_t i = 0; i < p.value(); ++i) {
        period[i] = quadratic_character(i, p) == -1 ? 1 : 0;
    }
    std::vector<Symbol> symbols(length);
    for (std::size_t i = 0; i < length; ++i) symbols[i] = period[i % p.value()];

    return Sequence(std::move(symbols), 2,
                    {{"generator", "legendre"}, {"p", std::to_string(p.value())}, {"length", std::to_string(length)}});
}

Sequence gen_two_prime(std::uint64_t p_value, std::uint64_t q_value, std::size_t length) {
    const PrimePair pq(p_value, q_value);
    require_length(length);
    const std::uint64_t p = pq.p, q = pq.q;
    const std::uint64_t period = p * q;

    std::vector<Symbol> one_period(period);
    for (std::uint64_t i = 0; i < period; ++i) {
        if (i % p == 0) {
            one_period[i] = 0;
        } else if (i % q == 0) {
            one_period[i] = 1;
        } else {
            one_period[i] = quadratic_character(i, p) * quadratic_character(i, q) == 1 ? 0 : 1;
        }
    }
    std::vector<Symbol> symbols(length);
    for (std::size_t i = 0; i < length; ++i) symbols[i] = one_period[i % period];

    return Sequence(std::move(symbols), 2,
                    {{"generator", "twoprime"},
                     {"p", std::to_string(p)},
                     {"q", std::to_string(q)},
                     {"length", std::to_string(length)},
                     {"boundary", "p|i->0,q|i->1"}});
}

bool two_prime_identity_index_is_safe(std::uint64_t i, std::uint64_t p, std::uint64_t q) {
    return std::gcd(i, p * q) == 1 && std::gcd(i + q, p) == 1 && std::gcd(i + p, q) == 1;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Sequence gen_random(unsigned m, std::size_t length, std::uint64_t seed) {
    if (m < 2 || m > 256) fail(ErrorCode::invalid_argument, "alphabet size m must lie in [2, 256]");
    require_length(length);

    std::mt19937_64 engine(seed);
    // Rejection sampling keeps the draw exactly uniform and independent of the
    // standard library's distribution implementation.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % m;
    std::vector<Symbol> symbols(length);
    for (auto& s : symbols) {
        std::uint64_t x;
        do {
            x = engine();
        } while (x >= limit);
        s = static_cast<Symbol>(x % m);
    }
    return Sequence(std::move(symbols), m,
                    {{"generator", "random"},
                     {"m", std::to_string(m)},
                     {"length", std::to_string(length)},
                     {"seed", std::to_string(seed)}});
}

}  // namespace seqm

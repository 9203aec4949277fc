#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "seqm/complexity.hpp"
#include "seqm/generators.hpp"

using namespace seqm;

namespace {

Sequence from_bits(std::uint32_t bits, std::size_t n) {
    std::vector<Symbol> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1u;
    return Sequence(std::move(s));
}

}  // namespace

TEST_CASE("linear complexity conventions") {
    CHECK(linear_complexity(Sequence::from_string("0000000"), 7) == 0);
    CHECK(linear_complexity(Sequence::from_string("00001"), 5) == 5);
    CHECK(linear_complexity(Sequence::from_string("1"), 1) == 1);
    CHECK(linear_complexity(Sequence::from_string("1111"), 4) == 1);
    CHECK(linear_complexity(Sequence::from_string("0101010"), 7) == 2);
    SEQM_CHECK_ERROR(linear_complexity(Sequence::from_string("01"), 0), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(linear_complexity(Sequence::from_string("01"), 3), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(linear_complexity(Sequence::from_string("012", 3), 3), ErrorCode::invalid_argument);
}

TEST_CASE("berlekamp-massey recurrence reproduces the prefix") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = gen_random(2, 200, seed);
        const auto r = berlekamp_massey(s, 200);
        CHECK(r.coefficients.size() == r.length);
        CHECK(r.generates(s.symbols(), 200));
        CHECK(r.length >= 80);
        CHECK(r.length <= 120);
    }
}

TEST_CASE("berlekamp-massey matches the exhaustive oracle on every short sequence") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            const auto s = from_bits(bits, n);
            REQUIRE(linear_complexity(s, n) == oracle::linear_complexity(s, n));
        }
    }
}

TEST_CASE("linear complexity profile is monotone and jumps to N+1-L") {
    const auto s = gen_random(2, 300, 5);
    const auto profile = linear_complexity_profile(s, 300);
    REQUIRE(profile.values.size() == 300);
    for (std::size_t n = 1; n < 300; ++n) {
        const auto before = profile.values[n - 1], after = profile.values[n];
        CHECK(after >= before);
        if (after != before) CHECK(after == n + 1 - before);
        if (n % 37 == 0) CHECK(after == linear_complexity(s, n + 1));
    }
    CHECK(profile.kind == ComplexityKind::linear);
}

TEST_CASE("maximum-order complexity examples") {
    CHECK(max_order_complexity(Sequence::from_string("001011"), 6) == 3);
    CHECK(max_order_complexity(Sequence::from_string("0"), 1) == 1);
    CHECK(max_order_complexity(Sequence::from_string("0000"), 4) == 1);
    CHECK(max_order_complexity(Sequence::from_string("00001"), 5) == 4);
    CHECK(max_order_complexity(Sequence::from_string("0120120", 3), 7) == 1);
    SEQM_CHECK_ERROR(max_order_complexity(Sequence::from_string("01"), 0), ErrorCode::invalid_argument);
}

TEST_CASE("maximum-order complexity matches the window-map oracle exhaustively") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            const auto s = from_bits(bits, n);
            REQUIRE(max_order_complexity(s, n) == oracle::max_order(s, n));
        }
    }
}

TEST_CASE("maximum-order complexity matches the oracle on non-binary alphabets") {
    for (unsigned m : {3u, 4u, 7u}) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto s = gen_random(m, 400, seed);
            for (std::size_t n : {1ul, 2ul, 17ul, 150ul, 400ul}) {
                CHECK(max_order_complexity(s, n) == oracle::max_order(s, n));
            }
        }
    }
}

TEST_CASE("online tracker agrees with the profile and is bounded by linear complexity") {
    const auto s = gen_legendre(1009, 1009);
    const auto mo = max_order_profile(s, 1009);
    const auto lc = linear_complexity_profile(s, 1009);
    MaxOrderTracker tracker(2, 1009);
    for (std::size_t n = 1; n <= 1009; ++n) {
        tracker.push(s[n - 1]);
        REQUIRE(tracker.complexity() == mo.values[n - 1]);
        CHECK(mo.values[n - 1] <= std::max<std::size_t>(lc.values[n - 1], 1));
        if (n > 1) CHECK(mo.values[n - 1] >= mo.values[n - 2]);
    }
    CHECK(tracker.size() == 1009);
    CHECK(mo.kind == ComplexityKind::maximum_order);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "expect_error.hpp"
#include "oracles.hpp"
#include "seqm/generators.hpp"
#include "seqm/number_theory.hpp"
#include "seqm/sequence.hpp"
#include "seqm/sequence_io.hpp"

using namespace seqm;

TEST_CASE("sequence construction and validation") {
    const auto s = Sequence::from_string("0110");
    CHECK(s.size() == 4);
    CHECK(s.is_binary());
    CHECK(s[1] == 1);
    CHECK(s.to_string() == "0110");
    CHECK(s.prefix(2).to_string() == "01");

    const auto t = Sequence::from_string("0120", 3);
    CHECK(t.alphabet() == 3);
    CHECK_FALSE(t.is_binary());

    SEQM_CHECK_ERROR(Sequence::from_string("012"), ErrorCode::symbol_out_of_range);
    SEQM_CHECK_ERROR(Sequence::from_string("01a"), ErrorCode::parse_error);
    SEQM_CHECK_ERROR(Sequence({0, 1}, 1), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(Sequence({0, 1}, 257), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(s.prefix(5), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(require_binary_prefix(t, 2), ErrorCode::invalid_argument);
}

TEST_CASE("provenance travels with the sequence but equality compares it") {
    const auto s = Sequence::from_string("01");
    const auto tagged = s.with_provenance({{"generator", "manual"}});
    CHECK(tagged.provenance().at("generator") == "manual");
    CHECK(tagged.symbols().size() == 2);
    CHECK_FALSE(tagged == s);
}

TEST_CASE("primality and quadratic characters") {
    for (std::uint64_t n : {2ull, 3ull, 5ull, 1009ull, 2147483647ull, 18446744073709551557ull}) CHECK(is_prime(n));
    for (std::uint64_t n : {0ull, 1ull, 4ull, 561ull, 3215031751ull, 18446744073709551615ull}) CHECK_FALSE(is_prime(n));

    for (std::uint64_t p : {3ull, 7ull, 11ull, 101ull}) {
        std::set<std::uint64_t> squares;
        for (std::uint64_t x = 1; x < p; ++x) squares.insert(x * x % p);
        for (std::uint64_t a = 0; a < 2 * p; ++a) {
            const int expected = a % p == 0 ? 0 : (squares.count(a % p) ? 1 : -1);
            CHECK(quadratic_character(a, p) == expected);
        }
    }
    CHECK(pow_mod(3, 1000, 1009) == pow_mod(3, 1000 % 1008, 1009));
}

TEST_CASE("prime parameter validation") {
    CHECK(OddPrime(7).value() == 7);
    SEQM_CHECK_ERROR(OddPrime(8), ErrorCode::not_prime);
    SEQM_CHECK_ERROR(OddPrime(1), ErrorCode::not_prime);
    SEQM_CHECK_ERROR(OddPrime(2), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(PrimePair(7, 5), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(PrimePair(5, 5), ErrorCode::invalid_argument);
    SEQM_CHECK_ERROR(PrimePair(5, 9), ErrorCode::not_prime);
}

TEST_CASE("legendre generator") {
    CHECK(gen_legendre(7, 7).to_string() == "0001011");
    CHECK(gen_legendre(7, 14).to_string() == "00010110001011");
    for (std::uint64_t p : {3ull, 5ull, 13ull, 101ull, 1009ull}) {
        const auto s = gen_legendre(p, 3 * p);
        const auto expected = oracle::legendre(p, 3 * p);
        CHECK(std::equal(s.symbols().begin(), s.symbols().end(), expected.begin(), expected.end()));
        CHECK(s.provenance().at("generator") == "legendre");
    }
    SEQM_CHECK_ERROR(gen_legendre(8, 10), ErrorCode::not_prime);
}

TEST_CASE("two-prime generator") {
    const std::uint64_t p = 5, q = 7, n = p * q;
    const auto t = gen_two_prime(p, q, 2 * n);
    for (std::uint64_t i = 0; i < n; ++i) {
        CHECK(t[i] == t[i + n]);
        if (i % p == 0) {
            CHECK(t[i] == 0);
        } else if (i % q == 0) {
            CHECK(t[i] == 1);
        } else {
            const int product = quadratic_character(i, p) * quadratic_character(i, q);
            CHECK(t[i] == (product == 1 ? 0 : 1));
        }
    }
    std::size_t safe = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!two_prime_identity_index_is_safe(i, p, q)) continue;
        ++safe;
        CHECK((t[i] + t[i + p] + t[i + q] + t[i + p + q]) % 2 == 0);
    }
    CHECK(safe > 0);
    SEQM_CHECK_ERROR(gen_two_prime(7, 5, 10), ErrorCode::invalid_argument);
}

TEST_CASE("random generator is seeded and alphabet-bounded") {
    const auto a = gen_random(2, 500, 42);
    const auto b = gen_random(2, 500, 42);
    const auto c = gen_random(2, 500, 43);
    CHECK(a == b);
    CHECK_FALSE(a.symbols().size() == 0);
    CHECK(a.to_string() != c.to_string());
    CHECK(a.provenance().at("seed") == "42");

    const auto t = gen_random(3, 3000, 7);
    std::size_t counts[3] = {};
    for (auto s : t.symbols()) {
        REQUIRE(s < 3);
        ++counts[s];
    }
    for (auto count : counts) CHECK(count > 800);

    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) == mix_seed(1, 0));
}

TEST_CASE("sequence text format round trip") {
    const auto s = gen_random(3, 150, 9).with_provenance({{"note", "a b=c%"}, {"generator", "random"}});
    const auto text = format_sequence_text(s);
    CHECK(text.rfind("# alphabet=3", 0) == 0);
    const auto back = parse_sequence_text(text);
    CHECK(back.alphabet() == 3);
    CHECK(back.to_string() == s.to_string());
    CHECK(back.provenance().at("note") == "a b=c%");

    CHECK(parse_sequence_text("01 10\n11\t0\n").to_string() == "0110110");
    CHECK(parse_sequence_text("0120", 3).alphabet() == 3);
    CHECK(parse_sequence_text("# alphabet=4\n0123", 5).alphabet() == 5);

    SEQM_CHECK_ERROR(parse_sequence_text("01x1"), ErrorCode::parse_error);
    SEQM_CHECK_ERROR(parse_sequence_text("# note=header-only\n  \n"), ErrorCode::empty_input);
    SEQM_CHECK_ERROR(parse_sequence_text("0120"), ErrorCode::symbol_out_of_range);
    SEQM_CHECK_ERROR(parse_sequence_text("# alphabet=zz\n01"), ErrorCode::parse_error);
}

TEST_CASE("sequence file io") {
    const auto dir = std::filesystem::temp_directory_path() / "seqm_test_seqcore";
    std::filesystem::create_directories(dir);
    const auto path = dir / "s.txt";
    const auto s = gen_legendre(101, 300);
    write_sequence(s, path);
    const auto back = read_sequence(path);
    CHECK(back.to_string() == s.to_string());
    CHECK(back.provenance().at("p") == "101");
    SEQM_CHECK_ERROR(read_sequence(dir / "missing.txt"), ErrorCode::io_error);
    std::filesystem::remove_all(dir);
}

#include <dioph/arith.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using dioph::DomainError;
using dioph::Integer;

namespace {

Integer random_integer(std::mt19937_64& rng, unsigned bits) {
    Integer v = 0;
    for (unsigned b = 0; b < bits; b += 64) v = (v << 64) | Integer(rng());
    return v >> (((bits + 63) / 64) * 64 - bits);
}

}  // namespace

TEST(Isqrt, Examples) {
    EXPECT_EQ(dioph::isqrt(0), 0);
    EXPECT_EQ(dioph::isqrt(576), 24);
    EXPECT_EQ(dioph::isqrt(9799), 98);
    EXPECT_EQ(dioph::isqrt(1), 1);
    EXPECT_EQ(dioph::isqrt(Integer("18446744073709551615")), Integer("4294967295"));
}

TEST(Isqrt, NegativeIsDomainError) { EXPECT_THROW(dioph::isqrt(-1), DomainError); }

TEST(Isqrt, BracketsRootAtEveryMagnitude) {
    std::mt19937_64 rng(7);
    for (unsigned bits : {1u, 8u, 31u, 52u, 53u, 63u, 64u, 65u, 100u, 127u, 128u, 129u, 400u, 2000u}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Integer n = random_integer(rng, bits);
            const Integer r = dioph::isqrt(n);
            ASSERT_LE(r * r, n) << n;
            ASSERT_GT((r + 1) * (r + 1), n) << n;
        }
    }
}

TEST(Isqrt, SquaresAndNeighbours) {
    std::mt19937_64 rng(11);
    for (unsigned bits : {20u, 32u, 33u, 64u, 200u}) {
        for (int trial = 0; trial < 30; ++trial) {
            const Integer r = random_integer(rng, bits);
            EXPECT_EQ(dioph::isqrt(r * r), r);
            if (r > 0) {
                EXPECT_EQ(dioph::isqrt(r * r - 1), r - 1);
            }
            EXPECT_EQ(dioph::isqrt(r * r + 2 * r), r);
        }
    }
}

TEST(PerfectSquare, Examples) {
    EXPECT_EQ(dioph::is_perfect_square(100), Integer(10));
    EXPECT_FALSE(dioph::is_perfect_square(43));
    EXPECT_EQ(dioph::is_perfect_square(0), Integer(0));
    EXPECT_FALSE(dioph::is_perfect_square(-4));
}

TEST(PerfectSquare, AgreesWithIsqrt) {
    for (std::int64_t n = 0; n <= 20000; ++n) {
        const Integer r = dioph::isqrt(n);
        ASSERT_EQ(dioph::is_perfect_square(n).has_value(), r * r == n) << n;
        ASSERT_EQ(dioph::is_perfect_square(n).has_value(), oracle::is_square(n)) << n;
    }
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const Integer r = random_integer(rng, 150);
        ASSERT_EQ(dioph::is_perfect_square(r * r), r);
        if (r > 1) {
            ASSERT_FALSE(dioph::is_perfect_square(r * r + 1));
        }
    }
}

TEST(ModPow, Examples) {
    EXPECT_EQ(dioph::mod_pow(2, 2, 5), 4);
    EXPECT_EQ(dioph::mod_pow(2, 1, 3), 2);
    EXPECT_EQ(dioph::mod_pow(2, 2, 3), 1);
    EXPECT_EQ(dioph::mod_pow(-3, 1, 5), 2);
    EXPECT_EQ(dioph::mod_pow(7, 0, 1), 0);
    EXPECT_EQ(dioph::mod_pow(7, 0, 13), 1);
}

TEST(ModPow, Errors) {
    EXPECT_THROW(dioph::mod_pow(2, 2, 0), DomainError);
    EXPECT_THROW(dioph::mod_pow(2, 2, -5), DomainError);
    EXPECT_THROW(dioph::mod_pow(2, -1, 5), DomainError);
}

TEST(ModPow, MatchesRepeatedMultiplication) {
    for (int base = -20; base <= 20; ++base)
        for (int exp = 0; exp <= 12; ++exp)
            for (int m = 1; m <= 30; ++m) {
                std::int64_t acc = 1 % m;
                for (int i = 0; i < exp; ++i) acc = oracle::mod(acc * base, m);
                ASSERT_EQ(dioph::mod_pow(base, exp, m), acc) << base << "^" << exp << " mod " << m;
            }
}

TEST(Legendre, Examples) {
    EXPECT_EQ(dioph::legendre(2, 3), -1);
    EXPECT_EQ(dioph::legendre(2, 5), -1);
    EXPECT_EQ(dioph::legendre(4, 7), 1);
    EXPECT_EQ(dioph::legendre(6, 3), 0);
    // negative a is reduced first: -3 == 2 (mod 5)
    EXPECT_EQ(dioph::legendre(-3, 5), -1);
}

TEST(Legendre, RejectsInvalidModuli) {
    EXPECT_THROW(dioph::legendre(1, 2), DomainError);
    EXPECT_THROW(dioph::legendre(1, 1), DomainError);
    EXPECT_THROW(dioph::legendre(1, -7), DomainError);
    EXPECT_THROW(dioph::legendre(1, 9), DomainError);
    EXPECT_THROW(dioph::legendre(1, 1001), DomainError);  // 7 * 11 * 13
    EXPECT_THROW(dioph::legendre(1, Integer("1000003") * Integer("1000033")), DomainError);
}

TEST(Legendre, LargePrimeNeedsCallerAssertion) {
    const Integer mersenne61 = (Integer(1) << 61) - 1;
    EXPECT_THROW(dioph::legendre(2, mersenne61), DomainError);
    // 2^61 - 1 == 7 (mod 8), so 2 is a residue
    EXPECT_EQ(dioph::legendre(2, mersenne61, /*assume_prime=*/true), 1);
    EXPECT_EQ(dioph::legendre(-1, mersenne61, true), -1);
}

TEST(Legendre, BelowTrialBoundIsAccepted) {
    EXPECT_EQ(dioph::legendre(2, 999983), oracle::quadratic_character(2, 999983));
}

TEST(Legendre, MultiplicativeForOddPrimesTo997) {
    for (std::int64_t p = 3; p <= 997; p += 2) {
        if (!oracle::is_odd_prime(p)) continue;
        std::vector<int> chi(p);
        for (std::int64_t a = 0; a < p; ++a) chi[a] = dioph::legendre(a, p);
        for (std::int64_t a = 1; a < p; ++a)
            for (std::int64_t b = 1; b < p; ++b) ASSERT_EQ(chi[a * b % p], chi[a] * chi[b]) << a << " " << b << " " << p;
    }
}

TEST(Legendre, EulerConsistencyAndBruteForceCharacter) {
    std::mt19937_64 rng(5);
    for (std::int64_t p = 3; p <= 997; p += 2) {
        if (!oracle::is_odd_prime(p)) continue;
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = static_cast<std::int64_t>(rng() % 10000) - 5000;
            const int symbol = dioph::legendre(a, p);
            ASSERT_EQ(symbol, oracle::quadratic_character(a, p));
            ASSERT_EQ(dioph::mod_pow(a, (p - 1) / 2, p), oracle::mod(symbol, p));
        }
    }
}

#pragma once

// Exact integer primitives: square roots, modular powers, Legendre symbols.

#include "integer.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

namespace dioph {

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    // the double estimate can be off by one or two either way near 2^64
    while (r > 0 && (r > 0xFFFFFFFFull || r * r > n)) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Bit i set iff i is a square mod 64.
constexpr std::uint64_t squares_mod64 = [] {
    std::uint64_t mask = 0;
    for (std::uint64_t r = 0; r < 64; ++r) mask |= std::uint64_t{1} << (r * r % 64);
    return mask;
}();

}  // namespace detail

/// Floor of the square root: the unique r >= 0 with r^2 <= n < (r+1)^2.
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw DomainError("isqrt: negative argument");
    if (fits_u64(n)) return Integer(detail::isqrt_u64(static_cast<std::uint64_t>(n)));

    // Newton iteration from an overestimate 2^ceil(bits/2) decreases monotonically
    // to floor(sqrt(n)).
    const std::size_t bits = boost::multiprecision::msb(n) + 1;
    Integer x = Integer(1) << ((bits + 1) / 2);
    for (;;) {
        Integer y = (x + n / x) >> 1;
        if (y >= x) break;
        x = std::move(y);
    }
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

/// Root r >= 0 with r^2 == n, or nullopt (always nullopt for negative n).
inline std::optional<Integer> is_perfect_square(const Integer& n) {
    if (n < 0) return std::nullopt;
    const auto low = static_cast<unsigned>(static_cast<std::uint64_t>(n & 63));
    if (((detail::squares_mod64 >> low) & 1u) == 0) return std::nullopt;
    Integer r = isqrt(n);
    if (r * r != n) return std::nullopt;
    return r;
}

/// base^exp mod modulus, in [0, modulus).
inline Integer mod_pow(const Integer& base, const Integer& exp, const Integer& modulus) {
    if (modulus < 1) throw DomainError("mod_pow: modulus must be positive");
    if (exp < 0) throw DomainError("mod_pow: negative exponent");
    if (modulus == 1) return 0;
    return boost::multiprecision::powm(mod_floor(base, modulus), exp, modulus);
}

inline constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

// Trial division by odd d <= min(sqrt(n), limit). Returns true when a factor was found.
inline bool has_small_factor(const Integer& n, std::uint64_t limit = kTrialDivisionLimit) {
    if (n < 4) return false;
    if ((n & 1) == 0) return true;
    if (fits_u64(n)) {
        const auto v = static_cast<std::uint64_t>(n);
        for (std::uint64_t d = 3; d <= limit && d * d <= v; d += 2) {
            if (v % d == 0) return true;
        }
        return false;
    }
    for (std::uint64_t d = 3; d <= limit; d += 2) {
        if (n % d == 0) return true;
    }
    return false;
}

/// Primality is fully decided by trial division when sqrt(n) <= limit.
inline bool primality_decidable(const Integer& n, std::uint64_t limit = kTrialDivisionLimit) {
    return n <= Integer(limit) * limit;
}

/// Legendre symbol (a/p) by Euler's criterion, a^((p-1)/2) mod p.
///
/// p must be an odd prime. p is checked by trial division up to 10^6; an odd p
/// too large for that check to be conclusive is rejected unless `assume_prime`
/// is set. Negative a is reduced into [0, p) first.
inline int legendre(const Integer& a, const Integer& p, bool assume_prime = false) {
    if (p < 3 || (p & 1) == 0) throw DomainError("legendre: p must be an odd prime");
    if (has_small_factor(p)) throw DomainError("legendre: p is composite");
    if (!assume_prime && !primality_decidable(p))
        throw DomainError("legendre: p too large to verify by trial division");

    const Integer r = mod_floor(a, p);
    if (r == 0) return 0;
    const Integer e = mod_pow(r, (p - 1) / 2, p);
    if (e == 1) return 1;
    if (e == p - 1) return -1;
    // only reachable for a composite p that slipped through assume_prime
    throw DomainError("legendre: Euler criterion inconsistent, p is not prime");
}

}  // namespace dioph

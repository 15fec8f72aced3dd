#pragma once

// D(k) sets (P_k sets): verification, regularity, pair reduction to a
// generalized Pell equation, and residue obstructions.

#include "arith.hpp"
#include "integer.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace dioph {

/// Distinct positive integers, stored ascending, together with the shift k != 0.
class DiophTuple {
public:
    DiophTuple(std::vector<Integer> elements, Integer k) : elements_(std::move(elements)), k_(std::move(k)) {
        if (k_ == 0) throw DomainError("DiophTuple: shift k must be nonzero");
        if (elements_.size() < 2) throw DomainError("DiophTuple: at least two elements are required");
        std::sort(elements_.begin(), elements_.end());
        if (elements_.front() <= 0) throw DomainError("DiophTuple: elements must be positive");
        if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
            throw DomainError("DiophTuple: elements must be distinct");
    }

    const std::vector<Integer>& elements() const { return elements_; }
    const Integer& k() const { return k_; }
    std::size_t size() const { return elements_.size(); }
    const Integer& operator[](std::size_t i) const { return elements_[i]; }

    bool contains(const Integer& v) const { return std::binary_search(elements_.begin(), elements_.end(), v); }

    friend bool operator==(const DiophTuple&, const DiophTuple&) = default;

private:
    std::vector<Integer> elements_;
    Integer k_;
};

struct PairCheck {
    std::size_t i = 0;
    std::size_t j = 0;
    Integer product;
    Integer shifted;             // product + k
    std::optional<Integer> root;  // sqrt(shifted) when it is a square
};

struct VerificationReport {
    std::vector<PairCheck> pairs;
    bool holds = true;

    const PairCheck* first_failure() const {
        for (const PairCheck& p : pairs)
            if (!p.root) return &p;
        return nullptr;
    }
};

/// Checks a_i a_j + k for every pair i < j.
inline VerificationReport verify(const DiophTuple& t) {
    VerificationReport report;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            PairCheck check{i, j, t[i] * t[j], 0, std::nullopt};
            check.shifted = check.product + t.k();
            check.root = is_perfect_square(check.shifted);
            report.holds = report.holds && check.root.has_value();
            report.pairs.push_back(std::move(check));
        }
    }
    return report;
}

inline bool has_property(const DiophTuple& t) { return verify(t).holds; }

/// a^2 + b^2 + c^2 - 2ab - 2bc - 2ca - 4k; zero exactly for regular triples.
inline Integer regularity_defect(const DiophTuple& t) {
    if (t.size() != 3) throw DomainError("regularity: exactly three elements are required");
    const Integer &a = t[0], &b = t[1], &c = t[2];
    return a * a + b * b + c * c - 2 * a * b - 2 * b * c - 2 * c * a - 4 * t.k();
}

/// Regular iff (c - b - a)^2 = 4(ab + k) for a < b < c.
inline bool is_regular(const DiophTuple& t) {
    if (t.size() != 3) throw DomainError("is_regular: exactly three elements are required");
    const Integer &a = t[0], &b = t[1], &c = t[2];
    const Integer lhs = c - b - a;
    return lhs * lhs == 4 * (a * b + t.k());
}

/// The pair of conditions a m + k = x^2, b m + k = y^2 with m eliminated:
/// b x^2 - a y^2 = k (b - a), or X^2 - D Y^2 = N with X = b x, Y = y,
/// D = a b and N = k b (b - a).
struct PairReduction {
    Integer a;
    Integer b;
    Integer k;
    Integer D;
    Integer N;

    // Witness roots (x for a, y for b) to the Pell coordinates.
    std::pair<Integer, Integer> to_pell(const Integer& x, const Integer& y) const { return {b * x, y}; }

    /// m = (x^2 - k) / a with x = X / b, when both divisions are exact and m > 0.
    std::optional<Integer> recover_m(const Integer& big_x) const {
        if (big_x % b != 0) return std::nullopt;
        const Integer x = big_x / b;
        const Integer num = x * x - k;
        if (num % a != 0) return std::nullopt;
        Integer m = num / a;
        if (m <= 0) return std::nullopt;
        return m;
    }

    /// Primitive form cx x^2 - cy y^2 = rhs of b x^2 - a y^2 = k (b - a).
    struct Form {
        Integer cx;
        Integer cy;
        Integer rhs;
        friend bool operator==(const Form&, const Form&) = default;
    };

    Form primitive_form() const {
        Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(a, b), abs(k * (b - a)));
        return {b / g, a / g, k * (b - a) / g};
    }
};

inline PairReduction reduce_pair(const Integer& a, const Integer& b, const Integer& k) {
    if (a <= 0 || a >= b) throw DomainError("reduce_pair: requires 0 < a < b");
    return PairReduction{a, b, k, a * b, k * b * (b - a)};
}

/// True iff (k/p) = -1, which rules out every positive multiple of p as an
/// element of any P_k set of size >= 2 (p t s + k == k is never a square mod p).
inline bool residue_obstruction(const Integer& k, const Integer& p, bool assume_prime = false) {
    return legendre(mod_floor(k, p), p, assume_prime) == -1;
}

/// k == 2 (mod 4): no P_k set of size 4 exists.
inline bool mod4_quadruple_obstruction(const Integer& k) { return mod_floor(k, 4) == 2; }

}  // namespace dioph

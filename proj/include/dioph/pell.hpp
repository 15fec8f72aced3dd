#pragma once

// Pell equations x^2 - D y^2 = 1 and x^2 - D y^2 = N.
//
// The unit equation is solved from the continued fraction of sqrt(D). The
// generalized equation is classified into solution classes: orbits under
// multiplication by the fundamental unit x1 + y1 sqrt(D). Base solutions come
// either from an exhaustive scan below Nagell's bound or, when that bound is
// too large to scan, from the Lagrange-Matthews-Mollin reduction.

#include "arith.hpp"
#include "integer.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace dioph::pell {

class PellProblem {
public:
    PellProblem(Integer d, Integer n) : d_(std::move(d)), n_(std::move(n)) {
        if (d_ < 2) throw DomainError("PellProblem: D must be at least 2");
        if (is_perfect_square(d_)) throw DomainError("PellProblem: D must not be a perfect square");
        if (n_ == 0) throw DomainError("PellProblem: N must be nonzero");
    }

    static PellProblem unit(const Integer& d) { return PellProblem(d, 1); }

    const Integer& D() const { return d_; }
    const Integer& N() const { return n_; }

    bool satisfied_by(const Integer& x, const Integer& y) const { return x * x - d_ * y * y == n_; }

    friend bool operator==(const PellProblem&, const PellProblem&) = default;

private:
    Integer d_;
    Integer n_;
};

/// Nonnegative solution (x, y) of its owning problem; checked on construction.
class PellSolution {
public:
    PellSolution(const PellProblem& problem, Integer x, Integer y) : x_(std::move(x)), y_(std::move(y)) {
        if (x_ < 0 || y_ < 0) throw DomainError("PellSolution: coordinates must be nonnegative");
        if (!problem.satisfied_by(x_, y_)) throw DomainError("PellSolution: (x, y) does not solve the equation");
    }

    const Integer& x() const { return x_; }
    const Integer& y() const { return y_; }

    friend bool operator==(const PellSolution&, const PellSolution&) = default;
    // ordered by y, then x
    friend bool operator<(const PellSolution& a, const PellSolution& b) {
        return a.y_ != b.y_ ? a.y_ < b.y_ : a.x_ < b.x_;
    }

private:
    Integer x_;
    Integer y_;
};

struct CFExpansion {
    Integer a0;
    std::vector<Integer> period;
};

namespace detail {

inline void require_nonsquare(const Integer& d) {
    if (d < 2) throw DomainError("pell: D must be at least 2");
    if (is_perfect_square(d)) throw DomainError("pell: D must not be a perfect square");
}

// Partial quotients a0, a1, a2, ... of sqrt(D), one per call.
class SqrtCFStream {
public:
    explicit SqrtCFStream(const Integer& d) : d_(d), a0_(isqrt(d)) {}

    const Integer& a0() const { return a0_; }

    Integer next() {
        if (first_) {
            first_ = false;
            a_ = a0_;
            return a_;
        }
        m_ = den_ * a_ - m_;
        den_ = (d_ - m_ * m_) / den_;
        a_ = (a0_ + m_) / den_;
        return a_;
    }

private:
    Integer d_;
    Integer a0_;
    Integer m_ = 0;
    Integer den_ = 1;
    Integer a_ = 0;
    bool first_ = true;
};

// (x + y sqrt(D)) * (u + v sqrt(D))
inline std::pair<Integer, Integer> mul(const Integer& d, const Integer& x, const Integer& y, const Integer& u,
                                       const Integer& v) {
    return {x * u + d * y * v, x * v + y * u};
}

}  // namespace detail

/// Periodic continued fraction sqrt(D) = [a0; period...]; the period ends in 2*a0.
inline CFExpansion sqrt_cf(const Integer& d) {
    detail::require_nonsquare(d);
    detail::SqrtCFStream cf(d);
    CFExpansion out{cf.next(), {}};
    const Integer end = 2 * out.a0;
    for (;;) {
        out.period.push_back(cf.next());
        if (out.period.back() == end) break;
    }
    return out;
}

/// Minimal positive solution of x^2 - D y^2 = 1: the first convergent of sqrt(D) of norm 1.
inline PellSolution fundamental_solution(const Integer& d) {
    detail::require_nonsquare(d);
    detail::SqrtCFStream cf(d);
    Integer p_prev = 1, p = cf.next();
    Integer q_prev = 0, q = 1;
    while (p * p - d * q * q != 1) {
        const Integer a = cf.next();
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        p_prev = std::exchange(p, std::move(p_next));
        q_prev = std::exchange(q, std::move(q_next));
    }
    return PellSolution(PellProblem::unit(d), p, q);
}

/// Minimal positive solution of x^2 - D y^2 = -1, present iff the period of sqrt(D) is odd.
inline std::optional<std::pair<Integer, Integer>> negative_unit(const Integer& d) {
    const CFExpansion cf = sqrt_cf(d);
    if (cf.period.size() % 2 == 0) return std::nullopt;
    Integer p_prev = 1, p = cf.a0;
    Integer q_prev = 0, q = 1;
    for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
        const Integer& a = cf.period[i];
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        p_prev = std::exchange(p, std::move(p_next));
        q_prev = std::exchange(q, std::move(q_next));
    }
    return std::pair{p, q};
}

/// Coefficient c of the two-term recurrence s_{n+1} = c s_n - s_{n-1}, namely 2 x1.
inline Integer recurrence_coefficient(const Integer& d) { return 2 * fundamental_solution(d).x(); }

/// First `count` solutions of x^2 - D y^2 = 1, starting at (1, 0).
inline std::vector<PellSolution> unit_sequence(const Integer& d, std::size_t count) {
    if (count == 0) throw DomainError("unit_sequence: count must be positive");
    const PellSolution fund = fundamental_solution(d);
    const PellProblem problem = PellProblem::unit(d);
    const Integer c = 2 * fund.x();

    std::vector<PellSolution> out;
    out.reserve(count);
    out.emplace_back(problem, 1, 0);
    if (count > 1) out.push_back(fund);
    while (out.size() < count) {
        const PellSolution& s1 = out[out.size() - 1];
        const PellSolution& s0 = out[out.size() - 2];
        out.emplace_back(problem, c * s1.x() - s0.x(), c * s1.y() - s0.y());
    }
    return out;
}

/// One orbit of solutions of x^2 - D y^2 = N under the fundamental unit.
///
/// The representative is (x_sign * base.x, base.y), with base.y minimal in the
/// class. Members are (x_sign * base.x + base.y sqrt(D)) * unit^n with both
/// coordinates taken in absolute value.
struct SolutionClass {
    PellSolution base;
    int x_sign = 1;
    PellSolution unit;

    std::pair<Integer, Integer> representative() const { return {x_sign * base.x(), base.y()}; }

    std::pair<Integer, Integer> member(const Integer& d, std::size_t n) const {
        auto [x, y] = representative();
        for (std::size_t i = 0; i < n; ++i) std::tie(x, y) = detail::mul(d, x, y, unit.x(), unit.y());
        return {abs(x), abs(y)};
    }
};

/// Two solutions lie in the same class iff x x' - D y y' and x y' - x' y are both divisible by N.
inline bool same_class(const PellProblem& problem, const std::pair<Integer, Integer>& s,
                       const std::pair<Integer, Integer>& t) {
    const Integer n = abs(problem.N());
    const Integer u = s.first * t.first - problem.D() * s.second * t.second;
    const Integer v = s.first * t.second - t.first * s.second;
    return u % n == 0 && v % n == 0;
}

namespace detail {

using Signed = std::pair<Integer, Integer>;

// Normalize the overall sign so y >= 0 (and x >= 0 when y == 0).
inline Signed normalize(Signed s) {
    if (s.second < 0 || (s.second == 0 && s.first < 0)) {
        s.first = -s.first;
        s.second = -s.second;
    }
    return s;
}

// Move along the class orbit to the point of minimal y; between two points of
// equal minimal y prefer the larger x.
inline Signed canonical_representative(const PellProblem& problem, const PellSolution& unit, Signed s) {
    const Integer& d = problem.D();
    s = normalize(std::move(s));
    auto down = [&](const Signed& p) { return normalize(mul(d, p.first, p.second, unit.x(), -unit.y())); };
    auto up = [&](const Signed& p) { return normalize(mul(d, p.first, p.second, unit.x(), unit.y())); };
    for (Signed t = down(s); t.second < s.second; t = down(s)) s = std::move(t);
    for (Signed t = up(s); t.second < s.second; t = up(s)) s = std::move(t);
    for (const Signed& t : {down(s), up(s)}) {
        if (t.second == s.second && t.first > s.first) s = t;
    }
    return s;
}

inline Integer nagell_y_bound(const PellProblem& problem, const PellSolution& unit) {
    // Nagell: y <= sqrt(N (x1 - 1) / (2D)) for N > 0 and sqrt(-N (x1 + 1) / (2D))
    // for N < 0. The x1 + 1 form bounds both.
    return isqrt(abs(problem.N()) * (unit.x() + 1) / (2 * problem.D()));
}

inline std::vector<Signed> base_candidates_by_scan(const PellProblem& problem, const Integer& y_bound) {
    std::vector<Signed> out;
    for (Integer y = 0; y <= y_bound; ++y) {
        if (auto x = is_perfect_square(problem.D() * y * y + problem.N())) {
            out.emplace_back(*x, y);
            if (*x != 0) out.emplace_back(-*x, y);
        }
    }
    return out;
}

inline constexpr std::uint64_t kMaxRootModulus = 1'000'000'000;

// z in (-m/2, m/2] with z^2 == D (mod m), ascending.
inline std::vector<Integer> sqrt_residues_centered(const Integer& d, const Integer& modulus) {
    if (modulus > Integer(kMaxRootModulus))
        throw DomainError("solve_general: |N| too large for the continued-fraction reduction");
    const auto m = static_cast<std::uint64_t>(modulus);
    const auto target = static_cast<std::uint64_t>(mod_floor(d, modulus));
    std::vector<Integer> out;
    std::uint64_t sq = 0;  // z^2 mod m
    for (std::uint64_t z = 0; z < m; ++z) {
        if (sq == target) {
            if (2 * z <= m)
                out.emplace_back(z);
            else
                out.emplace_back(Integer(z) - Integer(m));
        }
        sq += 2 * z + 1;
        while (sq >= m) sq -= m;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Lagrange-Matthews-Mollin: one solution per class, scanning f^2 | N and the
// continued fraction of (z + sqrt(D)) / |N/f^2| for each root z of D mod |N/f^2|.
inline std::vector<Signed> base_candidates_by_reduction(const PellProblem& problem) {
    const Integer& d = problem.D();
    const Integer& n = problem.N();
    const Integer sd = isqrt(d);
    const auto neg_unit = negative_unit(d);

    std::vector<Signed> out;
    for (Integer f = 1; f * f <= abs(n); ++f) {
        if (n % (f * f) != 0) continue;
        const Integer m = n / (f * f);
        const Integer q0 = abs(m);
        for (const Integer& z : sqrt_residues_centered(d, q0)) {
            Integer p = z, q = q0;
            Integer b2 = 1, b1 = 0;
            Integer g2 = -z, g1 = q0;
            std::set<std::pair<Integer, Integer>> seen{{p, q}};
            for (;;) {
                const Integer a = q > 0 ? floor_div(p + sd, q) : floor_div(p + sd + 1, q);
                Integer b = a * b1 + b2;
                Integer g = a * g1 + g2;
                b2 = std::exchange(b1, b);
                g2 = std::exchange(g1, g);
                p = a * q - p;
                q = (d - p * p) / q;
                if (q == 1 || q == -1) {
                    const Integer norm = g * g - d * b * b;
                    if (norm == m) {
                        out.emplace_back(f * g, f * b);
                    } else if (norm == -m && neg_unit) {
                        const auto& [t, u] = *neg_unit;
                        out.emplace_back(f * (g * t + b * u * d), f * (g * u + b * t));
                    } else if (norm != -m) {
                        throw std::logic_error("solve_general: reduction produced an unexpected norm");
                    }
                    break;
                }
                if (!seen.emplace(p, q).second) break;
            }
        }
    }
    return out;
}

inline std::vector<SolutionClass> classes_from_candidates(const PellProblem& problem, const PellSolution& unit,
                                                          const std::vector<Signed>& candidates) {
    std::set<Signed> reps;
    for (const Signed& c : candidates) reps.insert(canonical_representative(problem, unit, c));

    std::vector<SolutionClass> out;
    for (const auto& [x, y] : reps) {
        out.push_back(SolutionClass{PellSolution(problem, abs(x), y), x < 0 ? -1 : 1, unit});
    }
    std::sort(out.begin(), out.end(), [](const SolutionClass& a, const SolutionClass& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.x_sign > b.x_sign;
    });
    return out;
}

}  // namespace detail

enum class BaseSearch { automatic, scan, reduction };

inline constexpr std::uint64_t kDefaultClassBound = 100'000;

/// Every class of solutions of x^2 - D y^2 = N; empty when the equation is unsolvable.
///
/// With BaseSearch::automatic the bound scan runs when Nagell's bound is at most
/// `class_bound`, otherwise the continued-fraction reduction is used.
inline std::vector<SolutionClass> solve_general(const PellProblem& problem,
                                                const Integer& class_bound = kDefaultClassBound,
                                                BaseSearch route = BaseSearch::automatic) {
    if (class_bound < 1) throw DomainError("solve_general: class_bound must be positive");
    const PellSolution unit = fundamental_solution(problem.D());
    const Integer y_bound = detail::nagell_y_bound(problem, unit);
    if (route == BaseSearch::automatic) route = y_bound <= class_bound ? BaseSearch::scan : BaseSearch::reduction;
    const auto candidates = route == BaseSearch::scan ? detail::base_candidates_by_scan(problem, y_bound)
                                                      : detail::base_candidates_by_reduction(problem);
    return detail::classes_from_candidates(problem, unit, candidates);
}

/// Nonnegative solutions reached from each class representative and its
/// x-mirror within `max_index` unit steps; sorted by (y, x), distinct.
inline std::vector<PellSolution> solutions_by_index(const PellProblem& problem,
                                                    const std::vector<SolutionClass>& classes,
                                                    std::size_t max_index) {
    std::set<PellSolution> found;
    for (const SolutionClass& c : classes) {
        for (const int s : {1, -1}) {
            Integer x = s * c.x_sign * c.base.x(), y = c.base.y();
            for (std::size_t i = 0;; ++i) {
                found.emplace(problem, abs(x), abs(y));
                if (i == max_index) break;
                std::tie(x, y) = detail::mul(problem.D(), x, y, c.unit.x(), c.unit.y());
            }
        }
    }
    return {found.begin(), found.end()};
}

/// Every nonnegative solution with y <= y_limit, sorted by (y, x).
inline std::vector<PellSolution> solutions_up_to(const PellProblem& problem, const std::vector<SolutionClass>& classes,
                                                 const Integer& y_limit) {
    std::set<PellSolution> found;
    for (const SolutionClass& c : classes) {
        for (const int s : {1, -1}) {
            Integer x = s * c.x_sign * c.base.x(), y = c.base.y();
            Integer prev = -1;
            // |y| along a forward orbit is unimodal, so once it exceeds the limit
            // while increasing it never comes back
            for (;;) {
                const Integer ay = abs(y);
                if (ay <= y_limit) found.emplace(problem, abs(x), ay);
                if (ay > y_limit && ay > prev) break;
                prev = ay;
                std::tie(x, y) = detail::mul(problem.D(), x, y, c.unit.x(), c.unit.y());
            }
        }
    }
    return {found.begin(), found.end()};
}

/// All nonnegative (X, Y) with X^2 - s^2 Y^2 = N for a perfect-square
/// discriminant s^2, via the factorization (X - sY)(X + sY) = N.
inline std::vector<std::pair<Integer, Integer>> solve_square_discriminant(const Integer& root, const Integer& n) {
    if (root < 1) throw DomainError("solve_square_discriminant: root must be positive");
    if (n == 0) throw DomainError("solve_square_discriminant: N must be nonzero");
    std::set<std::pair<Integer, Integer>> out;
    const Integer an = abs(n);
    auto try_pair = [&](const Integer& lo, const Integer& hi) {
        // lo = X - sY, hi = X + sY
        if (hi < lo || hi + lo < 0) return;
        const Integer sum = lo + hi, diff = hi - lo;
        if (sum % 2 != 0 || diff % (2 * root) != 0) return;
        out.emplace(sum / 2, diff / (2 * root));
    };
    for (Integer u = 1; u * u <= an; ++u) {
        if (an % u != 0) continue;
        const Integer v = an / u;
        for (const Integer& lo : {u, Integer(-u), v, Integer(-v)}) try_pair(lo, n / lo);
    }
    return {out.begin(), out.end()};
}

}  // namespace dioph::pell

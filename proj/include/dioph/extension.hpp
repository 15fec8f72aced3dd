#pragma once

// Fourth-element search for D(k) triples and modular non-extendibility
// certificates.
//
// The Pell route reduces the two smallest-element conditions to one
// generalized Pell equation, walks its solution classes and tests the third
// condition directly. The brute-force route tests every m up to a bound. A
// certificate is a modulus M for which no residue m mod M satisfies all three
// conditions t_i m + k == square (mod M) at once.

#include "arith.hpp"
#include "integer.hpp"
#include "pell.hpp"
#include "tuples.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace dioph {

struct ConditionWitness {
    Integer element;
    Integer m;
    Integer root;  // element * m + k == root^2

    friend bool operator==(const ConditionWitness&, const ConditionWitness&) = default;
};

struct ExtensionCandidate {
    Integer m;
    std::vector<std::optional<ConditionWitness>> witnesses;  // one slot per triple element
    bool complete = false;

    friend bool operator==(const ExtensionCandidate&, const ExtensionCandidate&) = default;
};

struct ModularCertificate {
    std::uint64_t modulus = 0;
    std::vector<std::vector<std::uint64_t>> allowed_residues;  // per triple element, ascending
    bool intersection_empty = false;

    friend bool operator==(const ModularCertificate&, const ModularCertificate&) = default;
};

enum class Strategy { pell_sequence, brute_force };
enum class Verdict { extended, no_extension_below_bound, certified_non_extendable };

inline std::string_view to_string(Strategy s) {
    return s == Strategy::pell_sequence ? "pell_sequence" : "brute_force";
}

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::extended: return "extended";
        case Verdict::no_extension_below_bound: return "no_extension_below_bound";
        case Verdict::certified_non_extendable: return "certified_non_extendable";
    }
    return "unknown";
}

struct SearchReport {
    DiophTuple triple;
    Strategy strategy = Strategy::pell_sequence;
    Integer bound;
    std::vector<ExtensionCandidate> candidates;  // ascending by m
    std::vector<Integer> self_hits;              // m values equal to a triple element
    std::optional<ModularCertificate> certificate;
    Verdict verdict = Verdict::no_extension_below_bound;

    bool extended() const {
        return std::any_of(candidates.begin(), candidates.end(), [](const auto& c) { return c.complete; });
    }

    std::vector<Integer> complete_values() const {
        std::vector<Integer> out;
        for (const auto& c : candidates)
            if (c.complete) out.push_back(c.m);
        return out;
    }
};

namespace detail {

inline void require_triple(const DiophTuple& t) {
    if (t.size() != 3) throw DomainError("extension: exactly three elements are required");
    if (!has_property(t)) throw DomainError("extension: input is not a D(k) triple");
}

inline Verdict verdict_of(const SearchReport& r) {
    if (r.extended()) return Verdict::extended;
    if (r.certificate && r.certificate->intersection_empty) return Verdict::certified_non_extendable;
    return Verdict::no_extension_below_bound;
}

inline ExtensionCandidate make_candidate(const DiophTuple& t, const Integer& m) {
    ExtensionCandidate c{m, {}, true};
    for (const Integer& e : t.elements()) {
        if (auto r = is_perfect_square(e * m + t.k()))
            c.witnesses.emplace_back(ConditionWitness{e, m, *r});
        else {
            c.witnesses.emplace_back(std::nullopt);
            c.complete = false;
        }
    }
    return c;
}

// Nonnegative (X, Y) on X^2 - D Y^2 = N within max_index unit steps of each class.
inline std::vector<std::pair<Integer, Integer>> reduced_solutions(const PairReduction& red, std::size_t max_index) {
    std::vector<std::pair<Integer, Integer>> out;
    if (auto root = is_perfect_square(red.D)) return pell::solve_square_discriminant(*root, red.N);
    const pell::PellProblem problem(red.D, red.N);
    const auto classes = pell::solve_general(problem);
    for (const auto& s : pell::solutions_by_index(problem, classes, max_index)) out.emplace_back(s.x(), s.y());
    return out;
}

}  // namespace detail

inline constexpr std::size_t kDefaultPellIndex = 30;

/// Candidates m > 0 satisfying the two smallest-element conditions, found from
/// the reduced Pell equation within `max_index` unit steps of every class; each
/// is tested against the third element.
inline SearchReport pell_extension_search(const DiophTuple& t, std::size_t max_index = kDefaultPellIndex) {
    detail::require_triple(t);
    const PairReduction red = reduce_pair(t[0], t[1], t.k());

    std::map<Integer, ExtensionCandidate> by_m;
    std::vector<Integer> self_hits;
    for (const auto& [big_x, big_y] : detail::reduced_solutions(red, max_index)) {
        auto m = red.recover_m(big_x);
        if (!m) continue;
        if (t.contains(*m)) {
            if (std::find(self_hits.begin(), self_hits.end(), *m) == self_hits.end()) self_hits.push_back(*m);
            continue;
        }
        if (!by_m.contains(*m)) by_m.emplace(*m, detail::make_candidate(t, *m));
    }
    std::sort(self_hits.begin(), self_hits.end());

    SearchReport r{t, Strategy::pell_sequence, Integer(max_index), {}, std::move(self_hits), std::nullopt,
                   Verdict::no_extension_below_bound};
    for (auto& [m, c] : by_m) r.candidates.push_back(std::move(c));
    r.verdict = detail::verdict_of(r);
    return r;
}

/// Every m in [1, max_m] outside the triple with all three conditions square.
inline SearchReport brute_force_search(const DiophTuple& t, const Integer& max_m) {
    detail::require_triple(t);
    if (max_m < 1) throw DomainError("brute_force_search: max_m must be positive");
    SearchReport r{t, Strategy::brute_force, max_m, {}, {}, std::nullopt, Verdict::no_extension_below_bound};

    const Integer &a = t[0], &b = t[1], &c = t[2], &k = t.k();
    Integer va = a + k, vb = b + k, vc = c + k;  // element * m + k, kept incrementally
    for (Integer m = 1; m <= max_m; ++m, va += a, vb += b, vc += c) {
        if (!is_perfect_square(va) || !is_perfect_square(vb) || !is_perfect_square(vc)) continue;
        if (t.contains(m)) {
            r.self_hits.push_back(m);
            continue;
        }
        r.candidates.push_back(detail::make_candidate(t, m));
    }
    r.verdict = detail::verdict_of(r);
    return r;
}

namespace detail {

inline bool is_prime_power(std::uint64_t n) {
    if (n < 2) return false;
    std::uint64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (p * p > n) return true;
    while (n % p == 0) n /= p;
    return n == 1;
}

// Residue m (mod M) allowed for element e iff e m + k is a square mod M.
inline std::vector<std::uint64_t> allowed_for(std::uint64_t e, std::uint64_t k, std::uint64_t modulus,
                                              const std::vector<bool>& is_square) {
    std::vector<std::uint64_t> out;
    std::uint64_t v = k;
    for (std::uint64_t m = 0; m < modulus; ++m) {
        if (is_square[v]) out.push_back(m);
        v += e;
        if (v >= modulus) v -= modulus;
    }
    return out;
}

inline std::vector<bool> square_table(std::uint64_t modulus) {
    std::vector<bool> table(modulus, false);
    for (std::uint64_t r = 0; r <= modulus / 2; ++r) table[r * r % modulus] = true;
    return table;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxCertificateModulus = 100'000;

/// First modulus M in [lo, hi] whose three allowed-residue sets are disjoint.
///
/// Only prime powers are tried: condition sets mod M split over the prime powers
/// of M by the Chinese remainder theorem, so the least M with an empty
/// intersection is always a prime power.
inline std::optional<ModularCertificate> find_certificate_in_range(const DiophTuple& t, std::uint64_t lo,
                                                                   std::uint64_t hi) {
    detail::require_triple(t);
    if (hi > 3'000'000'000ull) throw DomainError("find_certificate: modulus bound too large");
    for (std::uint64_t modulus = std::max<std::uint64_t>(lo, 2); modulus <= hi; ++modulus) {
        if (!detail::is_prime_power(modulus)) continue;
        const Integer big_mod(modulus);
        std::uint64_t e[3];
        for (int i = 0; i < 3; ++i) e[i] = static_cast<std::uint64_t>(mod_floor(t[i], big_mod));
        const auto k = static_cast<std::uint64_t>(mod_floor(t.k(), big_mod));
        const auto sq = detail::square_table(modulus);

        bool empty = true;
        for (std::uint64_t m = 0; m < modulus && empty; ++m) {
            empty = !(sq[(e[0] * m + k) % modulus] && sq[(e[1] * m + k) % modulus] && sq[(e[2] * m + k) % modulus]);
        }
        if (!empty) continue;

        ModularCertificate cert{modulus, {}, true};
        for (int i = 0; i < 3; ++i) cert.allowed_residues.push_back(detail::allowed_for(e[i], k, modulus, sq));
        return cert;
    }
    return std::nullopt;
}

inline std::optional<ModularCertificate> find_certificate(const DiophTuple& t,
                                                          std::uint64_t max_modulus = kMaxCertificateModulus) {
    return find_certificate_in_range(t, 2, max_modulus);
}

/// Attaches a certificate search to a report with no complete candidate.
inline SearchReport certify(SearchReport report, std::uint64_t max_modulus = kMaxCertificateModulus) {
    if (!report.extended()) report.certificate = find_certificate(report.triple, max_modulus);
    report.verdict = detail::verdict_of(report);
    return report;
}

/// Union of two searches over the same triple and strategy; candidates and
/// self-hits are merged by m, the smaller-modulus certificate is kept.
inline SearchReport merge_reports(const SearchReport& lhs, const SearchReport& rhs) {
    if (!(lhs.triple == rhs.triple) || lhs.strategy != rhs.strategy)
        throw DomainError("merge_reports: reports describe different searches");
    SearchReport out{lhs.triple, lhs.strategy, std::max(lhs.bound, rhs.bound), {}, {}, std::nullopt,
                     Verdict::no_extension_below_bound};

    std::map<Integer, ExtensionCandidate> by_m;
    for (const auto* r : {&lhs, &rhs})
        for (const auto& c : r->candidates) by_m.emplace(c.m, c);
    for (auto& [m, c] : by_m) out.candidates.push_back(c);

    out.self_hits = lhs.self_hits;
    out.self_hits.insert(out.self_hits.end(), rhs.self_hits.begin(), rhs.self_hits.end());
    std::sort(out.self_hits.begin(), out.self_hits.end());
    out.self_hits.erase(std::unique(out.self_hits.begin(), out.self_hits.end()), out.self_hits.end());

    if (lhs.certificate && rhs.certificate)
        out.certificate = lhs.certificate->modulus <= rhs.certificate->modulus ? lhs.certificate : rhs.certificate;
    else
        out.certificate = lhs.certificate ? lhs.certificate : rhs.certificate;
    out.verdict = detail::verdict_of(out);
    return out;
}

}  // namespace dioph

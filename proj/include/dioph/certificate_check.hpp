#pragma once

// Independent checker for modular certificates. Shares no residue code with
// the search in extension.hpp.

#include "extension.hpp"
#include "integer.hpp"
#include "tuples.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <set>
#include <vector>

namespace dioph {

/// Recomputes every allowed-residue set for (t, k) modulo cert.modulus from
/// scratch and confirms they match the recorded sets and have no common element.
inline bool verify_certificate(const ModularCertificate& cert, const DiophTuple& t) {
    if (!cert.intersection_empty || cert.modulus < 2) return false;
    if (cert.allowed_residues.size() != t.size()) return false;

    const Integer modulus(cert.modulus);
    std::set<Integer> squares;
    for (Integer r = 0; r < modulus; ++r) squares.insert(r * r % modulus);

    std::set<Integer> common;
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::set<Integer> allowed;
        for (Integer m = 0; m < modulus; ++m) {
            if (squares.contains(mod_floor(t[i] * m + t.k(), modulus))) allowed.insert(m);
        }
        const std::set<Integer> recorded(cert.allowed_residues[i].begin(), cert.allowed_residues[i].end());
        if (recorded != allowed) return false;

        if (i == 0) {
            common = std::move(allowed);
        } else {
            std::set<Integer> next;
            std::set_intersection(common.begin(), common.end(), allowed.begin(), allowed.end(),
                                  std::inserter(next, next.end()));
            common = std::move(next);
        }
    }
    return common.empty();
}

}  // namespace dioph

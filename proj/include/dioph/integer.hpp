#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

using Integer = boost::multiprecision::cpp_int;

// Thrown whenever an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline std::string to_string(const Integer& v) { return v.str(); }

// Strict decimal parse: optional sign followed by at least one digit.
inline std::optional<Integer> parse_integer(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') i = 1;
    if (i == text.size()) return std::nullopt;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (text[j] < '0' || text[j] > '9') return std::nullopt;
    }
    Integer value(std::string(text.substr(i)));
    if (text[0] == '-') value = -value;
    return value;
}

inline int sign(const Integer& v) { return v.sign(); }

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// Division rounding toward negative infinity; divisor must be nonzero.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline bool fits_u64(const Integer& v) {
    return v >= 0 && v <= Integer(std::numeric_limits<std::uint64_t>::max());
}

inline bool fits_i64(const Integer& v) {
    return v >= Integer(std::numeric_limits<std::int64_t>::min()) &&
           v <= Integer(std::numeric_limits<std::int64_t>::max());
}

}  // namespace dioph

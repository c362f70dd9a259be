#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqcurv {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::vector<double> to_double(const RationalVector& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_d());
    return out;
}

}  // namespace eqcurv

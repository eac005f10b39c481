#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>

namespace quiverfold {

// Exact rational scalar used throughout the engine.  GMP keeps every
// intermediate value exact; nothing in this library ever rounds.
using Rational = mpq_class;

inline Rational rat(long long num, long long den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long long to_ll(const Rational& r) {
    // Callers only do this for values known to be small integers.
    if (r.get_den() != 1) throw std::invalid_argument("to_ll: not an integer");
    if (!r.get_num().fits_slong_p()) throw std::overflow_error("to_ll: too large");
    return r.get_num().get_si();
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline long long ll_gcd(long long a, long long b) { return std::gcd(a, b); }
inline long long ll_lcm(long long a, long long b) { return std::lcm(a, b); }

// Euclidean remainder into [0, m).
inline long long mod_nonneg(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace quiverfold

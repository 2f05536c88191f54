#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace carnot {

/// Exact rational scalar. GMP keeps values canonical (reduced, positive
/// denominator), which is what every algebraic identity here relies on.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q" or "p". Whitespace is not accepted.
inline Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    Rational r;
    if (r.set_str(std::string(s), 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + std::string(s) + "'");
    if (r.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
    r.canonicalize();
    return r;
}

/// Renders as "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// r^e for e >= 0 (e < 0 requires r != 0).
inline Rational pow_int(const Rational& r, long e) {
    if (e < 0) {
        if (is_zero(r)) throw std::domain_error("pow_int: 0 to a negative power");
        return 1 / pow_int(r, -e);
    }
    Rational acc(1), base(r);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// Exact square root when the argument is the square of a rational.
inline bool rational_sqrt(const Rational& r, Rational& out) {
    if (sgn(r) < 0) return false;
    const mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    out = Rational(sn, sd);
    out.canonicalize();
    return true;
}

}  // namespace carnot

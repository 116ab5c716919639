#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace hyperlog {

using Rational = mpq_class;

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline Rational parse_rational(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

// n/d in canonical form; the two-argument mpq constructor does not reduce.
inline Rational ratio(long n, long d)
{
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

namespace detail {

inline std::optional<mpz_class> exact_root(const mpz_class& a, unsigned long k)
{
    if (a < 0 && k % 2 == 0)
        return std::nullopt;
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) == 0)
        return std::nullopt;
    return r;
}

inline Rational pow_int(Rational base, unsigned long e)
{
    Rational out = 1;
    while (e) {
        if (e & 1)
            out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

}  // namespace detail

// q^t when the result is rational, nullopt otherwise.
inline std::optional<Rational> rational_power(const Rational& q, const Rational& t)
{
    if (t == 0)
        return Rational(1);
    if (q == 0)
        return t > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
    mpz_class tn = abs(t.get_num());
    if (!t.get_den().fits_ulong_p() || !tn.fits_ulong_p() || tn > 4096)
        return std::nullopt;
    unsigned long k = t.get_den().get_ui();
    auto rn = detail::exact_root(q.get_num(), k);
    auto rd = detail::exact_root(q.get_den(), k);
    if (!rn || !rd)
        return std::nullopt;
    Rational root(*rn, *rd);
    root.canonicalize();
    Rational out = detail::pow_int(root, tn.get_ui());
    if (t < 0)
        out = 1 / out;
    return out;
}

// Generalized binomial coefficient (t choose n).
inline Rational binomial(const Rational& t, unsigned n)
{
    Rational out = 1;
    for (unsigned i = 0; i < n; ++i) {
        out *= (t - i);
        out /= (i + 1);
    }
    return out;
}

}  // namespace hyperlog

#pragma once

#include "monomial.hpp"
#include "series.hpp"

#include <optional>
#include <vector>

namespace hyperlog {

namespace detail {

// Terms of c * d(m) = c * m * sum_b r_b l_b^dagger, ascending b.
inline Series derive_monomial(const Monomial& m, const Rational& c, Precision prec)
{
    if (m.is_one())
        return Series();
    std::size_t limit = prec.n;
    if (auto n = support_size(m); n && *n <= kFiniteSupportCap)
        limit = *n;
    std::vector<Term> terms;
    bool more = enumerate_support(m, limit, [&](const Ordinal& b, const Rational& r) {
        terms.push_back({mono_mul(m, hyperlog_dagger(b)), c * r});
    });
    std::optional<Monomial> bound;
    if (more)
        bound = terms.back().mono;
    return Series::from_terms(std::move(terms), std::move(bound));
}

// Majorant for the derivative of anything strictly below b. For b != 1 this is
// the dominant monomial of d(b); below 1 every l_G^dagger works, and a larger G
// gives the smaller bound.
inline Monomial derivative_bound(const Monomial& b, const Series& f)
{
    if (!b.is_one())
        return mono_mul(b, hyperlog_dagger(mono_min_support(b)));
    Ordinal top(1);
    for (const auto& t : f.terms())
        if (ord_compare(t.mono.support_sup(), top) > 0)
            top = t.mono.support_sup();
    return hyperlog_dagger(top);
}

// First ordinal at which the exponent of m differs from -1.
inline Ordinal first_non_deriv_index(const Monomial& m)
{
    Ordinal cur;
    for (const auto& p : m.pieces()) {
        if (p.lo != cur || p.exp != -1)
            return cur;
        cur = p.hi;
    }
    return cur;
}

}  // namespace detail

inline Series derive(const Series& f, Precision prec)
{
    Series out;
    for (const auto& t : f.terms())
        out = ser_add(out, detail::derive_monomial(t.mono, t.coeff, prec));
    if (f.bound())
        out = out.with_bound(detail::derivative_bound(*f.bound(), f));
    return out;
}

inline Series dagger(const Series& f, Precision prec)
{
    return ser_mul(derive(f, prec), ser_mul_inverse(f, prec));
}

// d/l_mu' applied to f.
inline Series mod_derive(const Series& f, const Ordinal& mu, Precision prec)
{
    return ser_mul_mono(derive(f, prec), mono_inv(hyperlog_deriv(mu)));
}

// Dominant monomial of the antiderivative of m: m * prod_{b <= g} l_b where g is
// the first index at which m is not -1.
inline Monomial antideriv_dom(const Monomial& m)
{
    Ordinal g = detail::first_non_deriv_index(m);
    return mono_mul(m, Monomial::interval(Ordinal(), ord_succ(g), 1));
}

// Distinguished integral: the antiderivative with no constant term.
inline Series integrate(const Series& f, Precision prec)
{
    if (f.is_exact_zero())
        return Series();
    Ordinal alpha;
    auto raise = [&](const Monomial& m) {
        if (ord_compare(m.support_sup(), alpha) > 0)
            alpha = m.support_sup();
    };
    for (const auto& t : f.terms())
        raise(t.mono);
    if (f.bound())
        raise(*f.bound());

    const Monomial level_deriv = hyperlog_deriv(alpha);
    const Series g = ser_mul_mono(f, mono_inv(level_deriv));
    const Rational c0 = ser_coefficient(g, Monomial()).value_or(0);
    const Series g1 = ser_sub(g, Series::constant(c0));

    // Right inverse of the modified derivation on a single monomial, up to lower terms.
    auto lift = [&](const Monomial& m) -> Term {
        Ordinal g0 = mono_min_support(m);
        Rational r = m.exponent_at(g0);
        return {mono_mul(m, Monomial::interval(ord_succ(g0), alpha, -1)), 1 / r};
    };
    auto error_op = [&](const Series& s) {
        Series out;
        for (const auto& t : s.terms()) {
            Term l = lift(t.mono);
            Series d = mod_derive(Series::monomial(l.mono, l.coeff * t.coeff), alpha, prec);
            out = ser_add(out, ser_sub(d, Series::monomial(t.mono, t.coeff)));
        }
        return s.bound() ? out.with_bound(*s.bound()) : out;
    };
    Series u = detail::sum_decreasing(g1, prec.n, [&](int, const Series& prev) { return ser_neg(error_op(prev)); });

    std::vector<Term> terms;
    for (const auto& t : u.terms()) {
        Term l = lift(t.mono);
        terms.push_back({l.mono, l.coeff * t.coeff});
    }
    if (c0 != 0)
        terms.push_back({hyperlog_monomial(alpha), c0});
    std::optional<Monomial> bound;
    if (u.bound())
        bound = antideriv_dom(mono_mul(*u.bound(), level_deriv));
    return Series::from_terms(std::move(terms), std::move(bound));
}

struct HFieldFacts {
    bool infinite = false;
    int derivative_sign = 0;
};

inline HFieldFacts hfield_facts(const Series& f, Precision prec)
{
    return {ser_is_positive_infinite(f), ser_compare_zero(derive(f, prec))};
}

}  // namespace hyperlog

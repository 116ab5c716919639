#pragma once

#include "error.hpp"
#include "monomial.hpp"
#include "rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperlog {

// Term budget for every truncating expansion: infinite sums are expanded to
// order N and ascending-index enumerations stop after N elements.
struct Precision {
    int n = 8;
    Precision() = default;
    explicit Precision(int v) : n(v)
    {
        if (v < 1)
            throw std::invalid_argument("precision must be at least 1");
    }
};

struct Term {
    Monomial mono;
    Rational coeff;
};

// Finite descending list of terms plus an optional remainder bound. The value is
// sum(terms) + rho where every monomial of rho is strictly below the bound.
// Listed terms are never below the bound, so a term sitting exactly at the bound
// has an exact coefficient.
class Series {
public:
    Series() = default;

    static Series constant(const Rational& c)
    {
        return monomial(Monomial(), c);
    }
    static Series monomial(const Monomial& m, const Rational& c = 1)
    {
        Series s;
        if (c != 0)
            s.terms_.push_back({m, c});
        return s;
    }
    static Series unknown(const Monomial& bound)
    {
        Series s;
        s.bound_ = bound;
        return s;
    }
    static Series from_terms(std::vector<Term> terms, std::optional<Monomial> bound = std::nullopt);

    const std::vector<Term>& terms() const { return terms_; }
    const std::optional<Monomial>& bound() const { return bound_; }
    bool is_exact() const { return !bound_; }
    bool is_exact_zero() const { return terms_.empty() && !bound_; }

    // Dominant monomial when known, else the bound; nullopt for exact zero.
    std::optional<Monomial> top() const
    {
        if (!terms_.empty())
            return terms_.front().mono;
        return bound_;
    }

    // Adds an unknown remainder below b.
    Series with_bound(const Monomial& b) const;

private:
    std::vector<Term> terms_;
    std::optional<Monomial> bound_;

    friend Series ser_add(const Series&, const Series&);
    void prune();
};

inline void Series::prune()
{
    if (!bound_)
        return;
    while (!terms_.empty() && mono_compare(terms_.back().mono, *bound_) < 0)
        terms_.pop_back();
}

inline Series Series::from_terms(std::vector<Term> terms, std::optional<Monomial> bound)
{
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return mono_compare(a.mono, b.mono) > 0; });
    Series s;
    for (auto& t : terms) {
        if (!s.terms_.empty() && s.terms_.back().mono == t.mono)
            s.terms_.back().coeff += t.coeff;
        else
            s.terms_.push_back(std::move(t));
    }
    std::erase_if(s.terms_, [](const Term& t) { return t.coeff == 0; });
    s.bound_ = std::move(bound);
    s.prune();
    return s;
}

inline Series Series::with_bound(const Monomial& b) const
{
    Series s = *this;
    if (!s.bound_ || mono_compare(b, *s.bound_) > 0)
        s.bound_ = b;
    s.prune();
    return s;
}

inline Series ser_add(const Series& a, const Series& b)
{
    Series s;
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    s.terms_.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        std::strong_ordering c = i == x.size()   ? std::strong_ordering::less
                                 : j == y.size() ? std::strong_ordering::greater
                                                 : mono_compare(x[i].mono, y[j].mono);
        if (c > 0) {
            s.terms_.push_back(x[i++]);
        } else if (c < 0) {
            s.terms_.push_back(y[j++]);
        } else {
            Rational v = x[i].coeff + y[j].coeff;
            if (v != 0)
                s.terms_.push_back({x[i].mono, std::move(v)});
            ++i;
            ++j;
        }
    }
    if (a.bound_ && b.bound_)
        s.bound_ = mono_max(*a.bound_, *b.bound_);
    else if (a.bound_)
        s.bound_ = a.bound_;
    else
        s.bound_ = b.bound_;
    s.prune();
    return s;
}

inline Series ser_scale(const Series& a, const Rational& c)
{
    if (c == 0)
        return Series();
    std::vector<Term> t = a.terms();
    for (auto& term : t)
        term.coeff *= c;
    Series s = Series::from_terms(std::move(t));
    return a.bound() ? s.with_bound(*a.bound()) : s;
}

inline Series ser_neg(const Series& a)
{
    return ser_scale(a, -1);
}

inline Series ser_sub(const Series& a, const Series& b)
{
    return ser_add(a, ser_neg(b));
}

// Multiplication by c*m, exact on terms and bound.
inline Series ser_mul_mono(const Series& a, const Monomial& m, const Rational& c = 1)
{
    if (c == 0)
        return Series();
    std::vector<Term> t;
    t.reserve(a.terms().size());
    for (const auto& term : a.terms())
        t.push_back({mono_mul(term.mono, m), term.coeff * c});
    std::optional<Monomial> b;
    if (a.bound())
        b = mono_mul(*a.bound(), m);
    return Series::from_terms(std::move(t), std::move(b));
}

inline Series ser_mul(const Series& a, const Series& b)
{
    if (a.is_exact_zero() || b.is_exact_zero())
        return Series();
    std::optional<Monomial> bound;
    auto raise = [&](const Monomial& m) {
        if (!bound || mono_compare(m, *bound) > 0)
            bound = m;
    };
    if (a.bound()) {
        if (!b.terms().empty())
            raise(mono_mul(b.terms().front().mono, *a.bound()));
        if (b.bound())
            raise(mono_mul(*a.bound(), *b.bound()));
    }
    if (b.bound() && !a.terms().empty())
        raise(mono_mul(a.terms().front().mono, *b.bound()));

    std::vector<Term> out;
    for (const auto& u : a.terms()) {
        for (const auto& v : b.terms()) {
            Monomial m = mono_mul(u.mono, v.mono);
            if (bound && mono_compare(m, *bound) < 0)
                break;
            out.push_back({std::move(m), u.coeff * v.coeff});
        }
    }
    return Series::from_terms(std::move(out), std::move(bound));
}

inline Series operator+(const Series& a, const Series& b) { return ser_add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return ser_sub(a, b); }
inline Series operator-(const Series& a) { return ser_neg(a); }
inline Series operator*(const Series& a, const Series& b) { return ser_mul(a, b); }

inline std::pair<Monomial, Rational> ser_dominant(const Series& a)
{
    if (a.terms().empty()) {
        if (a.bound())
            throw Error(ErrorKind::IndeterminateDominant, "dominant term is hidden below the bound");
        throw Error(ErrorKind::ZeroSeries, "the zero series has no dominant monomial");
    }
    return {a.terms().front().mono, a.terms().front().coeff};
}

// -1, 0 or 1.
inline int ser_compare_zero(const Series& a)
{
    if (a.is_exact_zero())
        return 0;
    if (a.terms().empty())
        throw Error(ErrorKind::IndeterminateSign, "sign is hidden below the bound");
    return sgn(a.terms().front().coeff);
}

inline bool ser_lt(const Series& a, const Series& b)
{
    return ser_compare_zero(ser_sub(b, a)) > 0;
}

// f > R: positive with an infinite dominant monomial.
inline bool ser_is_positive_infinite(const Series& a)
{
    if (a.terms().empty()) {
        if (a.bound() && mono_sign(*a.bound()) > 0)
            throw Error(ErrorKind::IndeterminateSign, "dominant term is hidden below the bound");
        return false;
    }
    return a.terms().front().coeff > 0 && mono_sign(a.terms().front().mono) > 0;
}

inline bool eq_exact(const Series& a, const Series& b)
{
    if (a.bound().has_value() != b.bound().has_value())
        return false;
    if (a.bound() && !(*a.bound() == *b.bound()))
        return false;
    if (a.terms().size() != b.terms().size())
        return false;
    for (std::size_t i = 0; i < a.terms().size(); ++i)
        if (a.terms()[i].coeff != b.terms()[i].coeff || !(a.terms()[i].mono == b.terms()[i].mono))
            return false;
    return true;
}

struct BoundComparison {
    bool equal = false;
    std::size_t compared_terms = 0;
    std::optional<Monomial> common_bound;
};

// Compares the terms of a and b that lie at or above the larger of their bounds.
inline BoundComparison compare_to_bound(const Series& a, const Series& b)
{
    BoundComparison r;
    if (a.bound() && b.bound())
        r.common_bound = mono_max(*a.bound(), *b.bound());
    else if (a.bound())
        r.common_bound = a.bound();
    else
        r.common_bound = b.bound();
    auto visible = [&](const Series& s) {
        std::vector<const Term*> v;
        for (const auto& t : s.terms())
            if (!r.common_bound || mono_compare(t.mono, *r.common_bound) >= 0)
                v.push_back(&t);
        return v;
    };
    auto va = visible(a);
    auto vb = visible(b);
    r.compared_terms = va.size();
    if (va.size() != vb.size())
        return r;
    for (std::size_t i = 0; i < va.size(); ++i)
        if (va[i]->coeff != vb[i]->coeff || !(va[i]->mono == vb[i]->mono))
            return r;
    r.equal = true;
    return r;
}

inline bool eq_to_bound(const Series& a, const Series& b)
{
    return compare_to_bound(a, b).equal;
}

// Coefficient of m when determined by the representation.
inline std::optional<Rational> ser_coefficient(const Series& a, const Monomial& m)
{
    if (a.bound() && mono_compare(m, *a.bound()) < 0)
        return std::nullopt;
    for (const auto& t : a.terms())
        if (t.mono == m)
            return t.coeff;
    return Rational(0);
}

namespace detail {

constexpr std::uint64_t kFiniteSupportCap = 64;

// Sums t_0 + t_1 + ... where t_n = next(n, t_{n-1}) and the dominant monomials
// strictly decrease. Stops at order N, at an exact zero term (later terms then
// vanish), or once a term lies below the accumulated bound. The tail beyond the
// last computed term t_K is below the dominant monomial of t_K.
template <class Next>
Series sum_decreasing(Series t0, int order, Next next)
{
    Series acc = t0;
    Series prev = std::move(t0);
    for (int n = 1; n <= order; ++n) {
        if (prev.is_exact_zero())
            return acc;
        if (acc.bound() && mono_compare(*prev.top(), *acc.bound()) <= 0)
            return acc;
        prev = next(n, prev);
        acc = ser_add(acc, prev);
    }
    if (!prev.is_exact_zero())
        acc = acc.with_bound(*prev.top());
    return acc;
}

// Splits a = c*d*(1 + eps) with eps infinitesimal.
struct Normalized {
    Monomial dom;
    Rational coeff;
    Series eps;
};

inline Normalized normalize(const Series& a)
{
    auto [d, c] = ser_dominant(a);
    Series eps = ser_sub(ser_mul_mono(a, mono_inv(d), 1 / c), Series::constant(1));
    return {d, c, std::move(eps)};
}

}  // namespace detail

inline Series ser_mul_inverse(const Series& a, Precision prec)
{
    auto [d, c, eps] = detail::normalize(a);
    Series minus_eps = ser_neg(eps);
    Series s = detail::sum_decreasing(Series::constant(1), prec.n,
                                      [&](int, const Series& prev) { return ser_mul(prev, minus_eps); });
    return ser_mul_mono(s, mono_inv(d), 1 / c);
}

// log m = sum r_b l_{b+1}, in ascending b (descending monomials).
inline Series log_monomial(const Monomial& m, Precision prec)
{
    std::size_t limit = prec.n;
    if (auto n = support_size(m); n && *n <= detail::kFiniteSupportCap)
        limit = *n;
    std::vector<Term> terms;
    bool more = enumerate_support(m, limit, [&](const Ordinal& b, const Rational& r) {
        terms.push_back({hyperlog_monomial(ord_succ(b)), r});
    });
    std::optional<Monomial> bound;
    if (more)
        bound = terms.back().mono;
    return Series::from_terms(std::move(terms), std::move(bound));
}

inline Series ser_log(const Series& a, Precision prec)
{
    if (a.is_exact_zero())
        throw Error(ErrorKind::NotPositive, "log of zero");
    int s = ser_compare_zero(a);
    if (s < 0)
        throw Error(ErrorKind::NotPositive, "log of a negative series");
    auto [d, c, eps] = detail::normalize(a);
    if (c != 1)
        throw Error(ErrorKind::NonMonicLog, "leading coefficient " + to_string(c) + " has irrational log");
    Series series = detail::sum_decreasing(eps, prec.n - 1, [&](int n, const Series& prev) {
        return ser_scale(ser_mul(prev, eps), Rational(-n, n + 1));
    });
    return ser_add(log_monomial(d, prec), series);
}

inline Series ser_pow(const Series& a, const Rational& t, Precision prec)
{
    if (t == 0)
        return Series::constant(1);
    if (t == 1)
        return a;
    if (a.is_exact_zero()) {
        if (t > 0)
            return Series();
        throw Error(ErrorKind::ZeroSeries, "negative power of zero");
    }
    int s = ser_compare_zero(a);
    if (s < 0 && !is_integer(t))
        throw Error(ErrorKind::NotPositive, "non-integer power of a negative series");
    auto [d, c, eps] = detail::normalize(a);
    auto ct = rational_power(c, t);
    if (!ct)
        throw Error(ErrorKind::IrrationalConstantPower,
                    to_string(c) + "^" + to_string(t) + " is not rational");
    Series series = detail::sum_decreasing(Series::constant(1), prec.n, [&](int n, const Series& prev) {
        return ser_scale(ser_mul(prev, eps), (t - (n - 1)) / n);
    });
    return ser_mul_mono(series, mono_pow(d, t), *ct);
}

inline void require_infinitesimal(const Series& h)
{
    auto top = h.top();
    if (top && mono_sign(*top) >= 0) {
        if (h.terms().empty() || mono_sign(h.terms().front().mono) < 0)
            throw Error(ErrorKind::IndeterminateSplit, "bound does not certify an infinitesimal");
        throw Error(ErrorKind::NotInfinitesimal, "series is not infinitesimal");
    }
}

// exp(h) for infinitesimal h.
inline Series ser_exp_infinitesimal(const Series& h, Precision prec)
{
    require_infinitesimal(h);
    return detail::sum_decreasing(Series::constant(1), prec.n, [&](int n, const Series& prev) {
        return ser_scale(ser_mul(prev, h), Rational(1, n));
    });
}

struct Parts {
    Series infinite;
    Rational constant;
    Series infinitesimal;
};

inline Parts ser_parts(const Series& a)
{
    if (a.bound() && mono_sign(*a.bound()) > 0)
        throw Error(ErrorKind::IndeterminateSplit, "bound is not below 1");
    std::vector<Term> inf, small;
    Rational c = 0;
    for (const auto& t : a.terms()) {
        int s = mono_sign(t.mono);
        if (s > 0)
            inf.push_back(t);
        else if (s < 0)
            small.push_back(t);
        else
            c = t.coeff;
    }
    return {Series::from_terms(std::move(inf)), c, Series::from_terms(std::move(small), a.bound())};
}

}  // namespace hyperlog

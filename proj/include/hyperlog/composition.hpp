#pragma once

#include "calculus.hpp"
#include "monomial.hpp"
#include "ordinal.hpp"
#include "series.hpp"

#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace hyperlog {

// Least index of the dominant monomial; empty for a dominant monomial of 1.
struct Logarithmicity {
    std::optional<Ordinal> value;
    bool is_infinite() const { return !value; }
};

inline Logarithmicity logarithmicity(const Series& g)
{
    auto [d, c] = ser_dominant(g);
    if (d.is_one())
        return {};
    return {mono_min_support(d)};
}

inline const Monomial& identity_monomial()
{
    static const Monomial x = hyperlog_monomial(Ordinal());
    return x;
}

inline bool is_identity(const Series& g)
{
    return g.is_exact() && g.terms().size() == 1 && g.terms()[0].coeff == 1 &&
           g.terms()[0].mono == identity_monomial();
}

inline void require_greater_than_reals(const Series& g)
{
    if (!ser_is_positive_infinite(g))
        throw Error(ErrorKind::NotGreaterThanR, "right operand of a composition must be positive infinite");
}

// Dominant monomial of b composed with g: d(g)^{r_0} times the shift of the
// remaining exponents by the logarithmicity of g.
inline Monomial dom_compose(const Monomial& b, const Series& g)
{
    auto [d, c] = ser_dominant(g);
    Ordinal lambda = mono_min_support(d);
    auto [head, rest] = mono_split(b, Ordinal(1));
    return mono_mul(mono_pow(d, b.exponent_at(Ordinal())), mono_shift(rest, lambda));
}

// f composed with l_{w^beta}: the part of each monomial below mu = w^{beta+1} is
// shifted, the rest goes through exp(-d~) with d~ the derivation divided by l_mu'.
inline Series compose_hyperlog_omega(const Series& f, const Ordinal& beta, Precision prec)
{
    const Ordinal mu = omega_pow(ord_succ(beta));
    const Ordinal step = omega_pow(beta);
    std::map<Monomial, Series> memo;
    auto upper = [&](const Monomial& m) -> const Series& {
        auto it = memo.find(m);
        if (it != memo.end())
            return it->second;
        Series s = detail::sum_decreasing(Series::monomial(m), prec.n, [&](int n, const Series& prev) {
            return ser_scale(mod_derive(prev, mu, prec), Rational(-1, n));
        });
        return memo.emplace(m, std::move(s)).first->second;
    };
    Series out;
    for (const auto& t : f.terms()) {
        auto [lo, hi] = mono_split(t.mono, mu);
        Monomial shifted = mono_shift(lo, step);
        if (hi.is_one())
            out = ser_add(out, Series::monomial(shifted, t.coeff));
        else
            out = ser_add(out, ser_mul_mono(upper(hi), shifted, t.coeff));
    }
    if (f.bound()) {
        auto [lo, hi] = mono_split(*f.bound(), mu);
        out = out.with_bound(mono_mul(mono_shift(lo, step), hi));
    }
    return out;
}

// f composed with l_gamma, one w-power of the Cantor normal form at a time,
// innermost (smallest) first.
inline Series compose_hyperlog(const Series& f, const Ordinal& gamma, Precision prec)
{
    auto powers = monomial_cnf_list(gamma);
    Series out = f;
    for (auto it = powers.rbegin(); it != powers.rend(); ++it)
        out = compose_hyperlog_omega(out, *it, prec);
    return out;
}

inline void require_support_from_omega(const Series& f)
{
    for (const auto& t : f.terms())
        if (!t.mono.is_one() && ord_compare(mono_min_support(t.mono), Ordinal::omega()) < 0)
            throw Error(ErrorKind::SupportBelowOmega, "series has monomials supported below w");
}

// Inverse of f -> f o l_3 on series supported from w on.
inline Series up3(const Series& f, Precision prec)
{
    require_support_from_omega(f);
    return detail::sum_decreasing(f, prec.n, [&](int, const Series& prev) {
        return ser_sub(prev, compose_hyperlog(prev, Ordinal(3), prec));
    });
}

namespace detail {

// Shared state for one composition with a fixed right operand g.
class Composer {
public:
    Composer(const Series& g, Precision prec) : prec_(prec)
    {
        require_greater_than_reals(g);
        lambda_ = *logarithmicity(g).value;
        logs_.push_back(g);
    }

    const Ordinal& lambda() const { return lambda_; }
    Precision precision() const { return prec_; }

    // n-fold logarithm of g.
    const Series& log_at(std::size_t n)
    {
        while (logs_.size() <= n)
            logs_.push_back(ser_log(logs_.back(), prec_));
        return logs_[n];
    }

    Series monomial(const Monomial& m)
    {
        Series out = Series::constant(1);
        for (const auto& p : m.pieces()) {
            auto lo = p.lo.as_nat();
            if (!lo)
                throw Error(ErrorKind::TypeError, "monomial is not supported below w");
            if (auto hi = p.hi.as_nat()) {
                for (auto n = *lo; n < *hi; ++n)
                    out = ser_mul(out, log_power(n, p.exp));
                continue;
            }
            if (p.hi != Ordinal::omega())
                throw Error(ErrorKind::TypeError, "monomial is not supported below w");
            out = ser_mul(out, infinite_tail(*lo, p.exp));
        }
        return out;
    }

    // prod_{n >= a} log_n(g)^r. From n = 3 on, log_n(g) = l_{lambda+n}(1 + delta_n)
    // with rapidly decreasing delta_n, so the product splits into an exact
    // monomial and a convergent product of near-one factors.
    Series infinite_tail(std::uint64_t a, const Rational& r)
    {
        auto key = std::pair(a, r);
        if (auto it = tails_.find(key); it != tails_.end())
            return it->second;
        const std::uint64_t start = std::max<std::uint64_t>(a, 3);
        Series out = Series::constant(1);
        for (auto n = a; n < start; ++n)
            out = ser_mul(out, log_power(n, r));
        out = ser_mul_mono(out, Monomial::interval(ord_add(lambda_, Ordinal(start)),
                                                   ord_add(lambda_, Ordinal::omega()), r));
        for (int k = 0; k < prec_.n; ++k) {
            std::uint64_t n = start + k;
            Series delta = ser_sub(ser_mul_mono(log_at(n), hyperlog_monomial(ord_add(lambda_, Ordinal(n)), -1)),
                                   Series::constant(1));
            if (delta.is_exact_zero())
                break;
            out = ser_mul(out, ser_pow(ser_add(Series::constant(1), delta), r, prec_));
            if (k + 1 == prec_.n)
                out = ser_mul(out, Series::constant(1).with_bound(*delta.top()));
        }
        return tails_.emplace(key, std::move(out)).first->second;
    }

    // log_n(g)^r, memoized.
    const Series& log_power(std::uint64_t n, const Rational& r)
    {
        auto key = std::pair(n, r);
        if (auto it = powers_.find(key); it != powers_.end())
            return it->second;
        Series p = ser_pow(log_at(n), r, prec_);
        return powers_.emplace(key, std::move(p)).first->second;
    }

    // sum_n (phi^(n) o l_{lambda+3}) eps^n / n! with eps = log_3(g) - l_{lambda+3}.
    Series deform(const Series& phi)
    {
        const Ordinal shift = ord_add(lambda_, Ordinal(3));
        const Series eps = ser_sub(log_at(3), Series::monomial(hyperlog_monomial(shift)));
        Series deriv = phi;
        Series power = Series::constant(1);
        return sum_decreasing(compose_hyperlog(phi, shift, prec_), prec_.n, [&](int n, const Series&) {
            deriv = derive(deriv, prec_);
            power = ser_scale(ser_mul(power, eps), Rational(1, n));
            if (deriv.is_exact_zero() || power.is_exact_zero())
                return Series();
            return ser_mul(compose_hyperlog(deriv, shift, prec_), power);
        });
    }

    // T_g(up3(phi)) without materializing up3(phi): by the chain rule for
    // composition with l_3, up3(phi)^(n) o l_{lambda+3} = (D^n phi) o l_lambda with
    // D = d/l_3'. This avoids truncating the Neumann sum of up3.
    Series deform_lifted(const Series& phi)
    {
        const Series eps = ser_sub(log_at(3), Series::monomial(hyperlog_monomial(ord_add(lambda_, Ordinal(3)))));
        const Monomial inv_l3_deriv = mono_inv(hyperlog_deriv(Ordinal(3)));
        Series lifted = phi;
        Series power = Series::constant(1);
        return sum_decreasing(compose_hyperlog(phi, lambda_, prec_), prec_.n, [&](int n, const Series&) {
            lifted = ser_mul_mono(derive(lifted, prec_), inv_l3_deriv);
            power = ser_scale(ser_mul(power, eps), Rational(1, n));
            if (lifted.is_exact_zero() || power.is_exact_zero())
                return Series();
            return ser_mul(compose_hyperlog(lifted, lambda_, prec_), power);
        });
    }

    Series compose(const Series& f)
    {
        if (is_identity(logs_[0]))
            return f;
        std::map<Monomial, std::vector<Term>> groups;
        for (const auto& t : f.terms()) {
            auto [lo, hi] = mono_split(t.mono, Ordinal::omega());
            groups[lo].push_back({hi, t.coeff});
        }
        Series out;
        for (auto& [lo, terms] : groups) {
            Series phi = Series::from_terms(std::move(terms));
            Series part = phi.terms().size() == 1 && phi.terms()[0].mono.is_one()
                              ? phi
                              : deform_lifted(phi);
            out = ser_add(out, ser_mul(monomial(lo), part));
        }
        if (f.bound())
            out = out.with_bound(dom_compose(*f.bound(), logs_[0]));
        return out;
    }

private:
    Precision prec_;
    Ordinal lambda_;
    std::deque<Series> logs_;
    std::map<std::pair<std::uint64_t, Rational>, Series> powers_;
    std::map<std::pair<std::uint64_t, Rational>, Series> tails_;
};

}  // namespace detail

inline Series log_iter(const Series& g, std::size_t n, Precision prec)
{
    detail::Composer c(g, prec);
    return c.log_at(n);
}

inline Series compose_monomial(const Monomial& m, const Series& g, Precision prec)
{
    detail::Composer c(g, prec);
    return c.monomial(m);
}

inline Series taylor_deform(const Series& phi, const Series& g, Precision prec)
{
    detail::Composer c(g, prec);
    return c.deform(phi);
}

inline Series compose(const Series& f, const Series& g, Precision prec)
{
    detail::Composer c(g, prec);
    return c.compose(f);
}

// sum_n (f^(n) o g) h^n / n!, which equals f o (g + h) when h is below g.
inline Series taylor_compose(const Series& f, const Series& g, const Series& h, Precision prec)
{
    detail::Composer c(g, prec);
    if (h.is_exact_zero())
        return c.compose(f);
    auto [dg, cg] = ser_dominant(g);
    if (mono_compare(*h.top(), dg) >= 0)
        throw Error(ErrorKind::HNotSmaller, "perturbation is not provably below the base point");
    Series deriv = f;
    Series power = Series::constant(1);
    return detail::sum_decreasing(c.compose(f), prec.n, [&](int n, const Series&) {
        deriv = derive(deriv, prec);
        power = ser_scale(ser_mul(power, h), Rational(1, n));
        if (deriv.is_exact_zero())
            return Series();
        return ser_mul(c.compose(deriv), power);
    });
}

// Compositional inverse for g with logarithmicity 0. The leading a x^b is peeled
// with the scaling group, the remaining monomial factor by composing with
// x m^{-1}, and the tangent-to-identity rest is inverted by a Neumann series.
inline Series invert(const Series& g, Precision prec)
{
    require_greater_than_reals(g);
    auto lam = logarithmicity(g);
    if (!lam.value->is_zero())
        throw Error(ErrorKind::NotInvertible, "logarithmicity is " + to_string(*lam.value) + ", not 0");
    auto [d, a] = ser_dominant(g);
    const Rational b = d.exponent_at(Ordinal());
    auto scale_coeff = rational_power(a, -1 / b);
    if (!scale_coeff)
        throw Error(ErrorKind::IrrationalConstantPower,
                    to_string(a) + "^" + to_string(Rational(-1 / b)) + " is not rational");

    const Series x = Series::monomial(identity_monomial());
    Series unit = ser_pow(ser_scale(g, 1 / a), 1 / b, prec);
    Monomial m = mono_pow(mono_split(d, Ordinal(1)).second, 1 / b);
    Series peel = Series::monomial(mono_mul(identity_monomial(), mono_inv(m)));
    Series tangent = m.is_one() ? unit : compose(unit, peel, prec);

    // k o tangent = x with tangent = x + delta; f o tangent - f = sum_{n>=1} f^(n) delta^n / n!.
    const Series delta = ser_sub(tangent, x);
    auto shift_op = [&](const Series& f) {
        Series deriv = derive(f, prec);
        Series power = delta;
        return detail::sum_decreasing(ser_mul(deriv, power), prec.n, [&](int n, const Series&) {
            deriv = derive(deriv, prec);
            power = ser_scale(ser_mul(power, delta), Rational(1, n + 1));
            if (deriv.is_exact_zero())
                return Series();
            return ser_mul(deriv, power);
        });
    };
    Series k = delta.is_exact_zero()
                   ? x
                   : detail::sum_decreasing(x, prec.n, [&](int, const Series& prev) { return ser_neg(shift_op(prev)); });
    Series unit_inv = m.is_one() ? k : compose(peel, k, prec);
    if (a == 1 && b == 1)
        return unit_inv;
    Series scale = Series::monomial(hyperlog_monomial(Ordinal(), 1 / b), *scale_coeff);
    return compose(unit_inv, scale, prec);
}

// l_gamma o g computed through integration: int((l_gamma' o g) g') minus the
// integration constant read off the logarithmicity of g.
inline Series recursion_check(const Ordinal& gamma, const Series& g, Precision prec)
{
    Series inner = compose(Series::monomial(hyperlog_deriv(gamma)), g, prec);
    Series integral = integrate(ser_mul(inner, derive(g, prec)), prec);
    auto lam = logarithmicity(g);
    return ser_sub(integral, Series::constant(Rational(lambda_coeff(*lam.value, gamma))));
}

}  // namespace hyperlog

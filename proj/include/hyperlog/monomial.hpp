#pragma once

#include "error.hpp"
#include "ordinal.hpp"
#include "rational.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace hyperlog {

// Constant exponent on the half-open ordinal interval [lo, hi).
struct Piece {
    Ordinal lo;
    Ordinal hi;
    Rational exp;
};

// Logarithmic hypermonomial prod l_b^{r_b} with a piecewise-constant exponent map.
// Pieces are sorted, disjoint, nonzero, and equal contiguous neighbours are merged.
class Monomial {
public:
    Monomial() = default;

    static Monomial from_pieces(std::vector<Piece> pieces);
    static Monomial interval(const Ordinal& lo, const Ordinal& hi, const Rational& r);

    const std::vector<Piece>& pieces() const
    {
        static const std::vector<Piece> empty;
        return rep_ ? *rep_ : empty;
    }
    bool is_one() const { return !rep_; }
    Rational exponent_at(const Ordinal& b) const;
    // Least ordinal above the support (0 for the identity).
    Ordinal support_sup() const { return is_one() ? Ordinal() : pieces().back().hi; }

private:
    std::shared_ptr<const std::vector<Piece>> rep_;
};

inline Monomial Monomial::from_pieces(std::vector<Piece> in)
{
    std::vector<Piece> out;
    out.reserve(in.size());
    for (auto& p : in) {
        if (p.exp == 0 || ord_compare(p.lo, p.hi) >= 0)
            continue;
        if (!out.empty() && out.back().hi == p.lo && out.back().exp == p.exp)
            out.back().hi = std::move(p.hi);
        else
            out.push_back(std::move(p));
    }
    Monomial m;
    if (!out.empty())
        m.rep_ = std::make_shared<const std::vector<Piece>>(std::move(out));
    return m;
}

inline Monomial Monomial::interval(const Ordinal& lo, const Ordinal& hi, const Rational& r)
{
    return from_pieces({{lo, hi, r}});
}

inline Rational Monomial::exponent_at(const Ordinal& b) const
{
    for (const auto& p : pieces()) {
        if (ord_compare(b, p.lo) < 0)
            break;
        if (ord_compare(b, p.hi) < 0)
            return p.exp;
    }
    return 0;
}

inline bool operator==(const Monomial& a, const Monomial& b)
{
    const auto& x = a.pieces();
    const auto& y = b.pieces();
    if (&x == &y)
        return true;
    if (x.size() != y.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].exp != y[i].exp || x[i].lo != y[i].lo || x[i].hi != y[i].hi)
            return false;
    return true;
}

namespace detail {

// Sweeps the union of both breakpoint sets in ascending order, calling
// f(lo, hi, va, vb) on every segment where at least one map is nonzero.
// f returns false to stop the sweep.
template <class F>
void sweep(const Monomial& a, const Monomial& b, F f)
{
    const auto& x = a.pieces();
    const auto& y = b.pieces();
    static const Rational zero = 0;
    static const Ordinal origin;
    std::size_t i = 0, j = 0;
    const Ordinal* cur = &origin;
    while (i < x.size() || j < y.size()) {
        if (i < x.size() && ord_compare(x[i].hi, *cur) <= 0) {
            ++i;
            continue;
        }
        if (j < y.size() && ord_compare(y[j].hi, *cur) <= 0) {
            ++j;
            continue;
        }
        bool ina = i < x.size() && ord_compare(x[i].lo, *cur) <= 0;
        bool inb = j < y.size() && ord_compare(y[j].lo, *cur) <= 0;
        const Ordinal* next = nullptr;
        auto consider = [&](const Ordinal& o) {
            if (!next || ord_compare(o, *next) < 0)
                next = &o;
        };
        if (i < x.size())
            consider(ina ? x[i].hi : x[i].lo);
        if (j < y.size())
            consider(inb ? y[j].hi : y[j].lo);
        if (ina || inb) {
            if (!f(*cur, *next, ina ? x[i].exp : zero, inb ? y[j].exp : zero))
                return;
        }
        cur = next;
    }
}

template <class Op>
Monomial combine(const Monomial& a, const Monomial& b, Op op)
{
    std::vector<Piece> out;
    sweep(a, b, [&](const Ordinal& lo, const Ordinal& hi, const Rational& va, const Rational& vb) {
        Rational v = op(va, vb);
        if (v != 0)
            out.push_back({lo, hi, std::move(v)});
        return true;
    });
    return Monomial::from_pieces(std::move(out));
}

}  // namespace detail

inline Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    if (a.is_one())
        return b;
    if (b.is_one())
        return a;
    return detail::combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

inline Monomial mono_div(const Monomial& a, const Monomial& b)
{
    if (b.is_one())
        return a;
    return detail::combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); });
}

inline Monomial mono_pow(const Monomial& a, const Rational& t)
{
    if (t == 0 || a.is_one())
        return Monomial();
    if (t == 1)
        return a;
    std::vector<Piece> out;
    for (const auto& p : a.pieces())
        out.push_back({p.lo, p.hi, p.exp * t});
    return Monomial::from_pieces(std::move(out));
}

inline Monomial mono_inv(const Monomial& a)
{
    return mono_pow(a, -1);
}

// Lexicographic order: at the least index where the exponents differ, the
// smaller exponent gives the smaller monomial.
inline std::strong_ordering mono_compare(const Monomial& a, const Monomial& b)
{
    if (a.pieces().data() == b.pieces().data() && a.pieces().size() == b.pieces().size())
        return std::strong_ordering::equal;
    std::strong_ordering out = std::strong_ordering::equal;
    detail::sweep(a, b, [&](const Ordinal&, const Ordinal&, const Rational& va, const Rational& vb) {
        int c = cmp(va, vb);
        if (c == 0)
            return true;
        out = c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return false;
    });
    return out;
}

inline std::strong_ordering operator<=>(const Monomial& a, const Monomial& b)
{
    return mono_compare(a, b);
}

// Compares m against the identity monomial: sign of the first exponent.
inline int mono_sign(const Monomial& m)
{
    if (m.is_one())
        return 0;
    return sgn(m.pieces().front().exp);
}

inline const Monomial& mono_max(const Monomial& a, const Monomial& b)
{
    return mono_compare(a, b) >= 0 ? a : b;
}

inline Ordinal mono_min_support(const Monomial& a)
{
    if (a.is_one())
        throw Error(ErrorKind::IdentityMonomial, "the identity monomial has empty support");
    return a.pieces().front().lo;
}

inline std::pair<Monomial, Monomial> mono_split(const Monomial& a, const Ordinal& beta)
{
    std::vector<Piece> left, right;
    for (const auto& p : a.pieces()) {
        if (ord_compare(p.hi, beta) <= 0) {
            left.push_back(p);
        } else if (ord_compare(p.lo, beta) >= 0) {
            right.push_back(p);
        } else {
            left.push_back({p.lo, beta, p.exp});
            right.push_back({beta, p.hi, p.exp});
        }
    }
    return {Monomial::from_pieces(std::move(left)), Monomial::from_pieces(std::move(right))};
}

// l_rho -> l_{gamma+rho}; left addition is strictly increasing, so intervals stay intervals.
inline Monomial mono_shift(const Monomial& a, const Ordinal& gamma)
{
    if (gamma.is_zero() || a.is_one())
        return a;
    std::vector<Piece> out;
    for (const auto& p : a.pieces())
        out.push_back({ord_add(gamma, p.lo), ord_add(gamma, p.hi), p.exp});
    return Monomial::from_pieces(std::move(out));
}

inline Monomial hyperlog_monomial(const Ordinal& alpha, const Rational& r = 1)
{
    return Monomial::interval(alpha, ord_succ(alpha), r);
}

inline Monomial hyperlog_deriv(const Ordinal& alpha)
{
    return Monomial::interval(Ordinal(), alpha, -1);
}

inline Monomial hyperlog_dagger(const Ordinal& alpha)
{
    return Monomial::interval(Ordinal(), ord_succ(alpha), -1);
}

inline bool piece_is_finite(const Piece& p)
{
    return ord_left_sub(p.lo, p.hi).is_finite();
}

// Number of support elements when the support is finite.
inline std::optional<std::uint64_t> support_size(const Monomial& m)
{
    std::uint64_t n = 0;
    for (const auto& p : m.pieces()) {
        auto len = ord_left_sub(p.lo, p.hi).as_nat();
        if (!len)
            return std::nullopt;
        n += *len;
    }
    return n;
}

// Visits support elements in ascending order, at most `limit` of them.
// Returns true when unvisited elements remain.
template <class F>
bool enumerate_support(const Monomial& m, std::size_t limit, F f)
{
    std::size_t count = 0;
    for (const auto& p : m.pieces()) {
        for (Ordinal b = p.lo; ord_compare(b, p.hi) < 0; b = ord_succ(b)) {
            if (count == limit)
                return true;
            f(b, p.exp);
            ++count;
        }
    }
    return false;
}

}  // namespace hyperlog

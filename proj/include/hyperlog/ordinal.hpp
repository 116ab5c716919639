#pragma once

#include "error.hpp"

#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlog {

struct CnfTerm;

// Ordinal below epsilon_0, stored in Cantor normal form with exponents strictly
// decreasing. Values are immutable and share their term list.
class Ordinal {
public:
    Ordinal() = default;
    Ordinal(std::uint64_t n);

    static Ordinal omega();
    static Ordinal from_cnf(std::vector<CnfTerm> terms);

    const std::vector<CnfTerm>& terms() const;
    bool is_zero() const { return !rep_; }
    bool is_finite() const { return !infinite_; }
    std::optional<std::uint64_t> as_nat() const;

private:
    std::shared_ptr<const std::vector<CnfTerm>> rep_;
    // Cached value for finite ordinals, so comparisons of naturals skip the CNF.
    std::uint64_t nat_ = 0;
    bool infinite_ = false;

    friend std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b);
};

struct CnfTerm {
    Ordinal exponent;
    std::uint64_t coeff;
};

inline std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b);

inline bool operator==(const Ordinal& a, const Ordinal& b)
{
    return ord_compare(a, b) == 0;
}
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b)
{
    return ord_compare(a, b);
}

inline const std::vector<CnfTerm>& Ordinal::terms() const
{
    static const std::vector<CnfTerm> empty;
    return rep_ ? *rep_ : empty;
}

inline Ordinal Ordinal::from_cnf(std::vector<CnfTerm> terms)
{
    if (terms.empty())
        return Ordinal();
    if (terms.size() == 1 && terms[0].exponent.is_zero())
        return Ordinal(terms[0].coeff);
    Ordinal o;
    o.rep_ = std::make_shared<const std::vector<CnfTerm>>(std::move(terms));
    o.infinite_ = true;
    return o;
}

inline Ordinal::Ordinal(std::uint64_t n) : nat_(n)
{
    constexpr std::uint64_t kShared = 64;
    using Rep = std::shared_ptr<const std::vector<CnfTerm>>;
    auto make = [](std::uint64_t k) { return std::make_shared<const std::vector<CnfTerm>>(std::vector<CnfTerm>{{Ordinal(), k}}); };
    if (n == 0)
        return;
    if (n < kShared) {
        static const std::vector<Rep> small = [&] {
            std::vector<Rep> v(kShared);
            for (std::uint64_t k = 1; k < kShared; ++k)
                v[k] = make(k);
            return v;
        }();
        rep_ = small[n];
    } else {
        rep_ = make(n);
    }
}

inline Ordinal Ordinal::omega()
{
    return from_cnf({{Ordinal(1), 1}});
}


inline std::optional<std::uint64_t> Ordinal::as_nat() const
{
    if (!infinite_)
        return nat_;
    return std::nullopt;
}

inline std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b)
{
    if (!a.infinite_ || !b.infinite_) {
        if (a.infinite_ != b.infinite_)
            return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        return a.nat_ <=> b.nat_;
    }
    const auto& x = a.terms();
    const auto& y = b.terms();
    if (&x == &y)
        return std::strong_ordering::equal;
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = ord_compare(x[i].exponent, y[i].exponent); c != 0)
            return c;
        if (auto c = x[i].coeff <=> y[i].coeff; c != 0)
            return c;
    }
    return x.size() <=> y.size();
}

inline Ordinal omega_pow(const Ordinal& b)
{
    return Ordinal::from_cnf({{b, 1}});
}

inline Ordinal ord_add(const Ordinal& a, const Ordinal& b)
{
    if (b.is_zero())
        return a;
    if (a.is_zero())
        return b;
    const auto& x = a.terms();
    const auto& y = b.terms();
    const Ordinal& lead = y[0].exponent;
    std::vector<CnfTerm> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0;
    for (; i < x.size() && ord_compare(x[i].exponent, lead) > 0; ++i)
        out.push_back(x[i]);
    if (i < x.size() && ord_compare(x[i].exponent, lead) == 0) {
        out.push_back({lead, x[i].coeff + y[0].coeff});
        out.insert(out.end(), y.begin() + 1, y.end());
    } else {
        out.insert(out.end(), y.begin(), y.end());
    }
    return Ordinal::from_cnf(std::move(out));
}

inline Ordinal ord_succ(const Ordinal& a)
{
    return ord_add(a, Ordinal(1));
}

// The unique d with a + d = c; requires a <= c.
inline Ordinal ord_left_sub(const Ordinal& a, const Ordinal& c)
{
    const auto& x = a.terms();
    const auto& y = c.terms();
    std::size_t i = 0;
    while (i < x.size() && i < y.size() && ord_compare(x[i].exponent, y[i].exponent) == 0
           && x[i].coeff == y[i].coeff)
        ++i;
    if (i == y.size())
        return Ordinal();
    std::vector<CnfTerm> out;
    if (i < x.size() && ord_compare(x[i].exponent, y[i].exponent) == 0) {
        out.push_back({y[i].exponent, y[i].coeff - x[i].coeff});
        out.insert(out.end(), y.begin() + i + 1, y.end());
    } else {
        out.insert(out.end(), y.begin() + i, y.end());
    }
    return Ordinal::from_cnf(std::move(out));
}

inline std::vector<Ordinal> monomial_cnf_list(const Ordinal& g)
{
    std::vector<Ordinal> out;
    for (const auto& t : g.terms())
        for (std::uint64_t k = 0; k < t.coeff; ++k)
            out.push_back(t.exponent);
    return out;
}

inline std::uint64_t lambda_coeff(const Ordinal& lambda, const Ordinal& nu)
{
    const auto& n = nu.terms();
    if (n.size() != 1 || n[0].coeff != 1)
        return 0;
    const auto& e = n[0].exponent.terms();
    if (e.empty() || !e.back().exponent.is_zero())
        return 0;
    // nu = w^(beta+1); recover beta by dropping one unit from the exponent.
    std::vector<CnfTerm> beta_terms(e.begin(), e.end());
    if (--beta_terms.back().coeff == 0)
        beta_terms.pop_back();
    Ordinal beta = Ordinal::from_cnf(std::move(beta_terms));
    for (const auto& t : lambda.terms())
        if (t.exponent == beta)
            return t.coeff;
    return 0;
}

inline bool is_successor(const Ordinal& a)
{
    return !a.is_zero() && a.terms().back().exponent.is_zero();
}

inline bool is_limit(const Ordinal& a)
{
    return !a.is_zero() && !is_successor(a);
}

// Text rendering: w^e*n terms joined by '+'; compound exponents are braced.
inline std::string to_string(const Ordinal& a)
{
    if (a.is_zero())
        return "0";
    std::string s;
    for (const auto& t : a.terms()) {
        if (!s.empty())
            s += "+";
        if (t.exponent.is_zero()) {
            s += std::to_string(t.coeff);
            continue;
        }
        s += "w";
        if (t.exponent != Ordinal(1)) {
            if (t.exponent.is_finite() || t.exponent == Ordinal::omega())
                s += "^" + to_string(t.exponent);
            else
                s += "^{" + to_string(t.exponent) + "}";
        }
        if (t.coeff != 1)
            s += "*" + std::to_string(t.coeff);
    }
    return s;
}

inline std::string to_latex(const Ordinal& a)
{
    if (a.is_zero())
        return "0";
    std::string s;
    for (const auto& t : a.terms()) {
        if (!s.empty())
            s += "+";
        if (t.exponent.is_zero()) {
            s += std::to_string(t.coeff);
            continue;
        }
        s += "\\omega";
        if (t.exponent != Ordinal(1))
            s += "^{" + to_latex(t.exponent) + "}";
        if (t.coeff != 1)
            s += "\\cdot " + std::to_string(t.coeff);
    }
    return s;
}

namespace detail {

// Character cursor shared by the ordinal and expression parsers.
class Cursor {
public:
    explicit Cursor(std::string_view src) : src_(src) {}

    void skip_ws()
    {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r'
                                      || src_[pos_] == '\n'))
            ++pos_;
    }
    bool at_end()
    {
        skip_ws();
        return pos_ >= src_.size();
    }
    char peek()
    {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }
    char peek_raw(std::size_t ahead = 0) const
    {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    bool eat(char c)
    {
        if (peek() != c)
            return false;
        last_ = pos_++;
        return true;
    }
    bool eat(std::string_view s)
    {
        skip_ws();
        if (src_.substr(pos_, s.size()) != s)
            return false;
        last_ = pos_;
        pos_ += s.size();
        return true;
    }
    void expect(char c, const char* what)
    {
        if (!eat(c))
            fail(std::string("expected ") + what);
    }
    bool at_digit()
    {
        char c = peek();
        return c >= '0' && c <= '9';
    }
    std::string digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9')
            ++pos_;
        if (start == pos_)
            fail("expected number");
        last_ = start;
        return std::string(src_.substr(start, pos_ - start));
    }
    std::string ident()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size()
               && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        last_ = start;
        return std::string(src_.substr(start, pos_ - start));
    }
    bool at_ident_char()
    {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    std::size_t pos() const { return pos_; }
    void reset(std::size_t p) { pos_ = p; }

    // Errors at end of input point at the last consumed token.
    [[noreturn]] void fail(const std::string& msg)
    {
        skip_ws();
        std::size_t at = pos_ < src_.size() ? pos_ : last_;
        fail_at(at, msg + (pos_ < src_.size() ? "" : " (unexpected end of input)"));
    }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const
    {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SyntaxError(line, col, msg);
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t last_ = 0;
};

inline std::uint64_t parse_nat(Cursor& c)
{
    std::string d = c.digits();
    if (d.size() > 18)
        c.fail("natural number too large");
    return std::stoull(d);
}

inline Ordinal parse_ordinal_sum(Cursor& c);

inline Ordinal parse_ordinal_exponent(Cursor& c)
{
    if (c.at_digit())
        return Ordinal(parse_nat(c));
    if (c.eat('(')) {
        Ordinal o = parse_ordinal_sum(c);
        c.expect(')', "')'");
        return o;
    }
    if (c.eat('{')) {
        Ordinal o = parse_ordinal_sum(c);
        c.expect('}', "'}'");
        return o;
    }
    if (c.eat('w')) {
        if (c.eat('^'))
            return omega_pow(parse_ordinal_exponent(c));
        return Ordinal::omega();
    }
    c.fail("expected ordinal exponent");
}

inline Ordinal parse_ordinal_term(Cursor& c)
{
    if (c.at_digit())
        return Ordinal(parse_nat(c));
    if (c.eat('(')) {
        Ordinal o = parse_ordinal_sum(c);
        c.expect(')', "')'");
        return o;
    }
    if (!c.eat('w'))
        c.fail("expected ordinal");
    Ordinal e(1);
    if (c.eat('^'))
        e = parse_ordinal_exponent(c);
    std::uint64_t n = 1;
    if (c.peek() == '*' && c.peek_raw(1) != '*') {
        c.eat('*');
        n = parse_nat(c);
    }
    if (n == 0)
        return Ordinal();
    return Ordinal::from_cnf({{e, n}});
}

// Sums are folded with ordinal addition, so non-canonical orderings renormalize.
inline Ordinal parse_ordinal_sum(Cursor& c)
{
    Ordinal o = parse_ordinal_term(c);
    while (c.eat('+'))
        o = ord_add(o, parse_ordinal_term(c));
    return o;
}

}  // namespace detail

inline Ordinal parse_ordinal(std::string_view text)
{
    detail::Cursor c(text);
    Ordinal o = detail::parse_ordinal_sum(c);
    if (!c.at_end())
        c.fail("unexpected input after ordinal");
    return o;
}

}  // namespace hyperlog

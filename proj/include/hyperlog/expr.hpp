#pragma once

#include "calculus.hpp"
#include "composition.hpp"
#include "error.hpp"
#include "format.hpp"
#include "ordinal.hpp"
#include "series.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlog {

struct Expr {
    enum class Kind { Number, Identity, Hyperlog, Interval, Bound, Neg, Add, Sub, Mul, Div, Pow, Call, OrdinalLit };

    Kind kind = Kind::Number;
    Rational number;
    Ordinal lo, hi;
    std::string name;
    std::vector<Expr> args;
    std::optional<int> prec;
    // Source span [begin, end) for error reports.
    std::size_t begin = 0, end = 0;
};

namespace detail {

struct FunctionForm {
    const char* name;
    std::size_t arity;
};

inline constexpr FunctionForm kFunctionForms[] = {
    {"D", 1}, {"int", 1}, {"log", 1}, {"comp", 2}, {"inv", 1}, {"taylor", 3}, {"lambda", 1}, {"dagger", 1},
};

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : c_(src) {}

    Expr parse()
    {
        Expr e = sum();
        if (!c_.at_end())
            c_.fail("unexpected input");
        return e;
    }

private:
    Cursor c_;

    Expr node(Expr::Kind k, std::size_t begin, std::vector<Expr> args = {})
    {
        Expr e;
        e.kind = k;
        e.args = std::move(args);
        e.begin = begin;
        e.end = c_.pos();
        return e;
    }

    std::size_t start()
    {
        c_.skip_ws();
        return c_.pos();
    }

    Expr sum()
    {
        std::size_t b = start();
        Expr e = product();
        for (;;) {
            if (c_.eat('+'))
                e = node(Expr::Kind::Add, b, {std::move(e), product()});
            else if (c_.eat('-'))
                e = node(Expr::Kind::Sub, b, {std::move(e), product()});
            else
                return e;
        }
    }

    Expr product()
    {
        std::size_t b = start();
        Expr e = unary();
        for (;;) {
            if (c_.eat('*'))
                e = node(Expr::Kind::Mul, b, {std::move(e), unary()});
            else if (c_.eat('/'))
                e = node(Expr::Kind::Div, b, {std::move(e), unary()});
            else
                return e;
        }
    }

    Expr unary()
    {
        std::size_t b = start();
        if (c_.eat('-'))
            return node(Expr::Kind::Neg, b, {unary()});
        Expr e = atom();
        if (c_.eat('^'))
            e = node(Expr::Kind::Pow, b, {std::move(e), exponent()});
        return e;
    }

    Expr exponent()
    {
        std::size_t b = start();
        if (c_.at_digit()) {
            Expr e = node(Expr::Kind::Number, b);
            e.number = parse_rational(c_.digits());
            e.end = c_.pos();
            return e;
        }
        for (auto [open, close] : {std::pair{'{', '}'}, std::pair{'(', ')'}}) {
            if (c_.eat(open)) {
                Expr e = sum();
                c_.expect(close, close == '}' ? "'}'" : "')'");
                return e;
            }
        }
        c_.fail("expected exponent: a natural number or a braced expression");
    }

    Ordinal index()
    {
        c_.expect('[', "'['");
        Ordinal o = parse_ordinal_sum(c_);
        c_.expect(']', "']'");
        return o;
    }

    Expr atom()
    {
        std::size_t b = start();
        if (c_.at_digit()) {
            Expr e = node(Expr::Kind::Number, b);
            e.number = parse_rational(c_.digits());
            e.end = c_.pos();
            return e;
        }
        if (c_.eat('(')) {
            Expr e = sum();
            c_.expect(')', "')'");
            return e;
        }
        if (!c_.at_ident_char())
            c_.fail("expected expression");
        std::string id = c_.ident();
        if (id == "x")
            return node(Expr::Kind::Identity, b);
        if (id == "l") {
            Expr e = node(Expr::Kind::Hyperlog, b);
            e.lo = index();
            e.end = c_.pos();
            return e;
        }
        if (id == "w")
            c_.fail_at(b, "'w' is only valid inside an ordinal position such as l[w] or ord(w)");
        c_.expect('(', "'('");
        if (id == "prod") {
            if (c_.ident() != "l")
                c_.fail("expected l[a..b]");
            c_.expect('[', "'['");
            Expr e = node(Expr::Kind::Interval, b);
            e.lo = parse_ordinal_sum(c_);
            if (!c_.eat(".."))
                c_.fail("expected '..'");
            e.hi = parse_ordinal_sum(c_);
            c_.expect(']', "']'");
            c_.expect(')', "')'");
            e.end = c_.pos();
            return e;
        }
        if (id == "O") {
            Expr inner = sum();
            c_.expect(')', "')'");
            return node(Expr::Kind::Bound, b, {std::move(inner)});
        }
        if (id == "ord") {
            Expr e = node(Expr::Kind::OrdinalLit, b);
            e.lo = parse_ordinal_sum(c_);
            c_.expect(')', "')'");
            e.end = c_.pos();
            return e;
        }
        const FunctionForm* form = nullptr;
        for (const auto& f : kFunctionForms)
            if (id == f.name)
                form = &f;
        if (!form)
            c_.fail_at(b, "unknown function '" + id + "'");
        std::vector<Expr> args;
        if (c_.peek() != ')') {
            args.push_back(sum());
            while (c_.eat(','))
                args.push_back(sum());
        }
        c_.expect(')', "')'");
        if (args.size() != form->arity)
            c_.fail_at(b, id + " takes " + std::to_string(form->arity) + " argument(s), got " +
                              std::to_string(args.size()));
        Expr e = node(Expr::Kind::Call, b, std::move(args));
        e.name = id;
        if (c_.eat('@')) {
            std::uint64_t n = parse_nat(c_);
            if (n < 1 || n > 1000)
                c_.fail("precision must be between 1 and 1000");
            e.prec = static_cast<int>(n);
        }
        e.end = c_.pos();
        return e;
    }
};

}  // namespace detail

inline Expr parse_expr(std::string_view text)
{
    return detail::ExprParser(text).parse();
}

class Evaluator {
public:
    explicit Evaluator(std::string_view source) : src_(source) {}

    Value eval(const Expr& e, Precision prec) const
    {
        using K = Expr::Kind;
        switch (e.kind) {
        case K::Number: return Series::constant(e.number);
        case K::Identity: return Series::monomial(identity_monomial());
        case K::Hyperlog: return Series::monomial(hyperlog_monomial(e.lo));
        case K::Interval: return Series::monomial(Monomial::interval(e.lo, e.hi, 1));
        case K::OrdinalLit: return e.lo;
        case K::Bound: {
            Series s = series(e.args[0], prec);
            if (!s.is_exact() || s.terms().size() != 1)
                type_error(e, "O(...) expects a single monomial");
            return Series::unknown(s.terms()[0].mono);
        }
        case K::Neg: return ser_neg(series(e.args[0], prec));
        case K::Add: {
            Value a = eval(e.args[0], prec);
            Value b = eval(e.args[1], prec);
            if (std::holds_alternative<Ordinal>(a) && std::holds_alternative<Ordinal>(b))
                return ord_add(std::get<Ordinal>(a), std::get<Ordinal>(b));
            return ser_add(as_series(e.args[0], a), as_series(e.args[1], b));
        }
        case K::Sub: return ser_sub(series(e.args[0], prec), series(e.args[1], prec));
        case K::Mul: return ser_mul(series(e.args[0], prec), series(e.args[1], prec));
        case K::Div: {
            Series a = series(e.args[0], prec);
            Series b = series(e.args[1], prec);
            return guarded(e, [&] { return ser_mul(a, ser_mul_inverse(b, prec)); });
        }
        case K::Pow: {
            Series base = series(e.args[0], prec);
            Series t = series(e.args[1], prec);
            if (!t.is_exact() || t.terms().size() > 1 || (t.terms().size() == 1 && !t.terms()[0].mono.is_one()))
                type_error(e.args[1], "exponent must be a rational constant");
            Rational r = t.terms().empty() ? Rational(0) : t.terms()[0].coeff;
            return guarded(e, [&] { return ser_pow(base, r, prec); });
        }
        case K::Call: return call(e, e.prec ? Precision(*e.prec) : prec);
        }
        return Series();
    }

    std::string text(const Expr& e) const { return std::string(src_.substr(e.begin, e.end - e.begin)); }

private:
    std::string_view src_;

    [[noreturn]] void type_error(const Expr& e, const std::string& msg) const
    {
        throw Error(ErrorKind::TypeError, "in " + text(e) + ": " + msg);
    }

    template <class F>
    Value guarded(const Expr& e, F f) const
    {
        try {
            return f();
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::SyntaxError)
                throw;
            throw Error(err.kind(), "in " + text(e) + ": " + err.what());
        }
    }

    Series as_series(const Expr& e, const Value& v) const
    {
        if (auto s = std::get_if<Series>(&v))
            return *s;
        type_error(e, "expected a series, got an ordinal");
    }

    Series series(const Expr& e, Precision prec) const { return as_series(e, eval(e, prec)); }

    Value call(const Expr& e, Precision prec) const
    {
        std::vector<Series> a;
        for (const auto& arg : e.args)
            a.push_back(series(arg, prec));
        const std::string& n = e.name;
        return guarded(e, [&]() -> Value {
            if (n == "D")
                return derive(a[0], prec);
            if (n == "int")
                return integrate(a[0], prec);
            if (n == "log")
                return ser_log(a[0], prec);
            if (n == "comp")
                return compose(a[0], a[1], prec);
            if (n == "inv")
                return invert(a[0], prec);
            if (n == "taylor")
                return taylor_compose(a[0], a[1], a[2], prec);
            if (n == "lambda")
                return logarithmicity(a[0]);
            return dagger(a[0], prec);
        });
    }
};

// Parses and evaluates one expression.
inline Value evaluate(std::string_view text, Precision prec)
{
    Expr e = parse_expr(text);
    return Evaluator(text).eval(e, prec);
}

}  // namespace hyperlog

#pragma once

#include "composition.hpp"
#include "error.hpp"
#include "monomial.hpp"
#include "ordinal.hpp"
#include "series.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace hyperlog {

enum class Format { Text, Latex, Json };

inline constexpr const char* kJsonSchema = "hyperlog/1";

namespace detail {

inline std::string text_exponent(const Rational& e)
{
    if (e == 1)
        return "";
    if (is_integer(e) && e > 0)
        return "^" + to_string(e);
    return "^{" + to_string(e) + "}";
}

inline std::string text_index(const Ordinal& a)
{
    return a.is_zero() ? "x" : "l[" + to_string(a) + "]";
}

inline std::string latex_index(const Ordinal& a)
{
    std::string s = to_latex(a);
    return s.size() == 1 ? "\\ell_" + s : "\\ell_{" + s + "}";
}

inline std::string latex_rational(const Rational& q)
{
    if (is_integer(q))
        return to_string(q);
    std::string sign = q < 0 ? "-" : "";
    Rational a = abs(q);
    return sign + "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
}

// Short finite runs such as x*l[1] read better as separate factors.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> short_run(const Piece& p)
{
    auto lo = p.lo.as_nat(), hi = p.hi.as_nat();
    if (lo && hi && *hi - *lo <= 3)
        return std::pair(*lo, *hi);
    return std::nullopt;
}

}  // namespace detail

inline std::string format_monomial_text(const Monomial& m)
{
    if (m.is_one())
        return "1";
    std::string s;
    for (const auto& p : m.pieces()) {
        if (!s.empty())
            s += "*";
        if (auto run = detail::short_run(p)) {
            for (auto n = run->first; n < run->second; ++n)
                s += (n == run->first ? "" : "*") + detail::text_index(n) + detail::text_exponent(p.exp);
        } else if (ord_succ(p.lo) == p.hi)
            s += detail::text_index(p.lo) + detail::text_exponent(p.exp);
        else
            s += "prod(l[" + to_string(p.lo) + ".." + to_string(p.hi) + "])" + detail::text_exponent(p.exp);
    }
    return s;
}

inline std::string format_monomial_latex(const Monomial& m)
{
    if (m.is_one())
        return "1";
    std::string s;
    for (const auto& p : m.pieces()) {
        if (!s.empty())
            s += " ";
        std::string e = p.exp == 1 ? "" : "^{" + detail::latex_rational(p.exp) + "}";
        if (auto run = detail::short_run(p)) {
            for (auto n = run->first; n < run->second; ++n)
                s += (n == run->first ? "" : " ") + detail::latex_index(n) + e;
        } else if (ord_succ(p.lo) == p.hi)
            s += detail::latex_index(p.lo) + e;
        else
            s += "\\prod_{" + to_latex(p.lo) + " \\le \\beta < " + to_latex(p.hi) + "} \\ell_\\beta" + e;
    }
    return s;
}

namespace detail {

template <class MonoFmt, class CoeffFmt>
std::string format_terms(const Series& f, MonoFmt mono, CoeffFmt coeff, const char* times)
{
    if (f.is_exact_zero())
        return "0";
    std::string s;
    for (const auto& t : f.terms()) {
        bool neg = t.coeff < 0;
        Rational a = abs(t.coeff);
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (t.mono.is_one())
            s += coeff(a);
        else if (a == 1)
            s += mono(t.mono);
        else
            s += coeff(a) + times + mono(t.mono);
    }
    if (f.bound()) {
        if (!s.empty())
            s += " + ";
        s += "O(" + mono(*f.bound()) + ")";
    }
    return s;
}

}  // namespace detail

inline std::string format_text(const Series& f)
{
    return detail::format_terms(
        f, format_monomial_text, [](const Rational& q) { return to_string(q); }, "*");
}

inline std::string format_latex(const Series& f)
{
    return detail::format_terms(f, format_monomial_latex, detail::latex_rational, " ");
}

inline nlohmann::json monomial_to_json(const Monomial& m)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : m.pieces())
        a.push_back({{"from", to_string(p.lo)}, {"to", to_string(p.hi)}, {"exp", to_string(p.exp)}});
    return a;
}

inline nlohmann::json series_to_json(const Series& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"monomial", monomial_to_json(t.mono)}, {"coeff", to_string(t.coeff)}});
    nlohmann::json j = {{"schema", kJsonSchema}, {"terms", terms}, {"bound", nullptr}};
    if (f.bound())
        j["bound"] = monomial_to_json(*f.bound());
    return j;
}

inline std::string format_json(const Series& f)
{
    return series_to_json(f).dump();
}

namespace detail {

[[noreturn]] inline void bad_json(const std::string& what)
{
    throw Error(ErrorKind::SyntaxError, "json: " + what);
}

inline Rational json_rational(const nlohmann::json& j)
{
    if (!j.is_string())
        bad_json("rational must be a string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        bad_json(e.what());
    }
}

inline Monomial json_monomial(const nlohmann::json& j)
{
    if (!j.is_array())
        bad_json("monomial must be an array");
    std::vector<Piece> pieces;
    for (const auto& p : j) {
        if (!p.is_object() || !p.contains("from") || !p.contains("to") || !p.contains("exp"))
            bad_json("piece needs from, to and exp");
        if (!p["from"].is_string() || !p["to"].is_string())
            bad_json("ordinals must be strings");
        pieces.push_back({parse_ordinal(p["from"].get<std::string>()), parse_ordinal(p["to"].get<std::string>()),
                          json_rational(p["exp"])});
    }
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (ord_compare(pieces[i - 1].hi, pieces[i].lo) > 0)
            bad_json("pieces overlap or are out of order");
    return Monomial::from_pieces(std::move(pieces));
}

}  // namespace detail

inline Series series_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || j.value("schema", "") != kJsonSchema)
        detail::bad_json(std::string("expected schema ") + kJsonSchema);
    if (!j.contains("terms") || !j["terms"].is_array())
        detail::bad_json("terms must be an array");
    std::vector<Term> terms;
    for (const auto& t : j["terms"]) {
        if (!t.is_object() || !t.contains("monomial") || !t.contains("coeff"))
            detail::bad_json("term needs monomial and coeff");
        terms.push_back({detail::json_monomial(t["monomial"]), detail::json_rational(t["coeff"])});
    }
    std::optional<Monomial> bound;
    if (j.contains("bound") && !j["bound"].is_null())
        bound = detail::json_monomial(j["bound"]);
    return Series::from_terms(std::move(terms), std::move(bound));
}

inline Series parse_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        detail::bad_json(e.what());
    }
    return series_from_json(j);
}

// Result of evaluating a CLI expression.
using Value = std::variant<Series, Ordinal, Logarithmicity>;

inline std::string format_value(const Value& v, Format mode)
{
    if (auto s = std::get_if<Series>(&v)) {
        switch (mode) {
        case Format::Text: return format_text(*s);
        case Format::Latex: return format_latex(*s);
        case Format::Json: return format_json(*s);
        }
    }
    std::string text, latex;
    if (auto o = std::get_if<Ordinal>(&v)) {
        text = to_string(*o);
        latex = to_latex(*o);
    } else {
        const auto& l = std::get<Logarithmicity>(v);
        text = l.is_infinite() ? "inf" : to_string(*l.value);
        latex = l.is_infinite() ? "\\infty" : to_latex(*l.value);
    }
    switch (mode) {
    case Format::Text: return text;
    case Format::Latex: return latex;
    case Format::Json: return nlohmann::json({{"schema", kJsonSchema}, {"ordinal", text}}).dump();
    }
    return text;
}

}  // namespace hyperlog

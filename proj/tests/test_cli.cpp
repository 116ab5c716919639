#include "generators.hpp"
#include "test_util.hpp"

#include "hyperlog/expr.hpp"
#include "hyperlog/format.hpp"

using namespace hyperlog;
using namespace hyperlog::test;

namespace {

using K = Expr::Kind;

std::string eval_text(const std::string& s, int prec = 8, Format f = Format::Text)
{
    return format_value(evaluate(s, Precision(prec)), f);
}

SyntaxError syntax_error_of(const std::string& s)
{
    try {
        parse_expr(s);
    } catch (const SyntaxError& e) {
        return e;
    }
    ADD_FAILURE() << "no syntax error for " << s;
    return SyntaxError(0, 0, "");
}

std::string error_text(const std::string& s)
{
    try {
        evaluate(s, Precision(8));
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Cli, ParseShapes)
{
    Expr c = parse_expr("comp(l[w], l[1])");
    ASSERT_EQ(c.kind, K::Call);
    EXPECT_EQ(c.name, "comp");
    ASSERT_EQ(c.args.size(), 2u);
    EXPECT_EQ(c.args[0].kind, K::Hyperlog);
    EXPECT_EQ(c.args[0].lo, Ordinal::omega());
    EXPECT_EQ(c.args[1].lo, Ordinal(1));

    Expr d = parse_expr("D(x^2 + l[1])");
    ASSERT_EQ(d.kind, K::Call);
    const Expr& add = d.args.at(0);
    ASSERT_EQ(add.kind, K::Add);
    EXPECT_EQ(add.args[0].kind, K::Pow);
    EXPECT_EQ(add.args[0].args[0].kind, K::Identity);
    EXPECT_EQ(add.args[1].kind, K::Hyperlog);
}

TEST(Cli, Precedence)
{
    // ^ binds tighter than * and /, which bind tighter than + and -; all left associative.
    Expr e = parse_expr("1 - x * l[1]^2 / 3 - 4");
    ASSERT_EQ(e.kind, K::Sub);
    EXPECT_EQ(e.args[0].kind, K::Sub);
    EXPECT_EQ(e.args[1].kind, K::Number);
    const Expr& quot = e.args[0].args[1];
    ASSERT_EQ(quot.kind, K::Div);
    EXPECT_EQ(quot.args[0].kind, K::Mul);
    EXPECT_EQ(quot.args[0].args[1].kind, K::Pow);
    EXPECT_EQ(eval_text("2 - 3 - 4"), "-5");
    EXPECT_EQ(eval_text("12 / 2 / 3"), "2");
    EXPECT_EQ(eval_text("-x^2"), "-x^2");
}

TEST(Cli, SyntaxErrors)
{
    auto e = syntax_error_of("l[w^");
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.col(), 4);
    EXPECT_EQ(syntax_error_of("x + + x").col(), 5);
    EXPECT_EQ(syntax_error_of("foo(x)").col(), 1);
    EXPECT_EQ(syntax_error_of("x + w").col(), 5);
    EXPECT_EQ(syntax_error_of("D(x, x)").col(), 1);
    EXPECT_EQ(syntax_error_of("comp(x)").col(), 1);
    EXPECT_EQ(syntax_error_of("(x").col(), 2);
    EXPECT_EQ(syntax_error_of("x^x").col(), 3);
    EXPECT_EQ(syntax_error_of("D(x)@0").col(), 6);
}

TEST(Cli, EvalExamples)
{
    EXPECT_EQ(eval_text("comp(l[w], l[1])"), "l[w] - 1");
    EXPECT_EQ(eval_text("int(1/x)"), "l[1]");
    EXPECT_EQ(eval_text("lambda(l[w^2]+x)"), "0");
    EXPECT_EQ(eval_text("lambda(l[w*2+1])"), "w*2+1");
    EXPECT_EQ(eval_text("lambda(3 + 1/x)"), "inf");
    EXPECT_EQ(eval_text("ord(w^2) + ord(w*3+1)"), "w^2+w*3+1");
    EXPECT_EQ(eval_text("ord(5) + ord(w)"), "w");
    EXPECT_EQ(eval_text("D(l[2])"), "x^{-1}*l[1]^{-1}");
    EXPECT_EQ(eval_text("dagger(x^2)"), "2*x^{-1}");
    EXPECT_EQ(eval_text("inv(2*x)"), "1/2*x");
    EXPECT_EQ(eval_text("taylor(x^2, x, 1)"), "x^2 + 2*x + 1");
    EXPECT_EQ(eval_text("log(x*l[1]^2)"), "l[1] + 2*l[2]");
    EXPECT_EQ(eval_text("(x^2)^{1/2}"), "x");
    EXPECT_EQ(eval_text("x^(1-3)"), "x^{-2}");
    EXPECT_EQ(eval_text("prod(l[0..w])^{-1}"), "prod(l[0..w])^{-1}");
}

TEST(Cli, PrecisionOverride)
{
    EXPECT_EQ(eval_text("log(1 + 1/x)@2"), "x^{-1} - 1/2*x^{-2} + O(x^{-2})");
    EXPECT_EQ(eval_text("log(1 + 1/x)", 3), "x^{-1} - 1/2*x^{-2} + 1/3*x^{-3} + O(x^{-3})");
    // The override applies to the call it is attached to.
    EXPECT_EQ(eval_text("1/(1 + 1/x) + log(1 + 1/x)@1", 2), "1 + O(x^{-1})");
}

TEST(Cli, EvalErrorsNameSubexpression)
{
    EXPECT_EQ(error_of([] { evaluate("1 + log(2*x)", Precision(4)); }), ErrorKind::NonMonicLog);
    EXPECT_NE(error_text("1 + log(2*x)").find("in log(2*x)"), std::string::npos);
    EXPECT_EQ(error_of([] { evaluate("inv(l[1] + x^{-1})", Precision(4)); }), ErrorKind::NotInvertible);
    EXPECT_NE(error_text("inv(l[1] + x^{-1})").find("in inv(l[1] + x^{-1})"), std::string::npos);
    EXPECT_EQ(error_of([] { evaluate("ord(1) + x", Precision(4)); }), ErrorKind::TypeError);
    EXPECT_EQ(error_of([] { evaluate("x^{x}", Precision(4)); }), ErrorKind::TypeError);
    EXPECT_EQ(error_of([] { evaluate("O(x + 1)", Precision(4)); }), ErrorKind::TypeError);
    EXPECT_EQ(error_of([] { evaluate("1/0", Precision(4)); }), ErrorKind::ZeroSeries);
    EXPECT_EQ(error_of([] { evaluate("taylor(x, x, x)", Precision(4)); }), ErrorKind::HNotSmaller);
    EXPECT_EQ(error_of([] { evaluate("comp(x, 1/x)", Precision(4)); }), ErrorKind::NotGreaterThanR);
}

TEST(Cli, FormatExamples)
{
    EXPECT_EQ(format_text(S("l[w] - 1")), "l[w] - 1");
    EXPECT_EQ(format_latex(S("x^2")), "\\ell_0^{2}");
    EXPECT_EQ(format_latex(S("1/2*l[w+1]^{-1}")), "\\frac{1}{2} \\ell_{\\omega+1}^{-1}");
    EXPECT_EQ(format_latex(S("prod(l[0..w])^{-1}")), "\\prod_{0 \\le \\beta < \\omega} \\ell_\\beta^{-1}");
    EXPECT_EQ(format_latex(S("x + O(1)")), "\\ell_0 + O(1)");
    auto j = nlohmann::json::parse(format_json(S("x + O(1)")));
    EXPECT_EQ(j["schema"], "hyperlog/1");
    EXPECT_FALSE(j["bound"].is_null());
    EXPECT_TRUE(j["bound"].is_array());
    EXPECT_TRUE(nlohmann::json::parse(format_json(S("x")))["bound"].is_null());
    EXPECT_EQ(format_text(Series()), "0");
    EXPECT_EQ(format_text(S("O(x^{-1})")), "O(x^{-1})");
}

TEST(Cli, JsonSchema)
{
    auto j = nlohmann::json::parse(format_json(S("-1/2*x*prod(l[2..w])^{3}")));
    ASSERT_EQ(j["terms"].size(), 1u);
    EXPECT_EQ(j["terms"][0]["coeff"], "-1/2");
    auto mono = j["terms"][0]["monomial"];
    ASSERT_EQ(mono.size(), 2u);
    EXPECT_EQ(mono[0]["from"], "0");
    EXPECT_EQ(mono[0]["to"], "1");
    EXPECT_EQ(mono[0]["exp"], "1");
    EXPECT_EQ(mono[1]["from"], "2");
    EXPECT_EQ(mono[1]["to"], "w");
    EXPECT_EQ(mono[1]["exp"], "3");
}

TEST(Cli, JsonRejectsMalformed)
{
    for (const char* bad : {"", "{}", "[1]", R"({"schema":"hyperlog/2","terms":[],"bound":null})",
                            R"({"schema":"hyperlog/1","terms":[{"coeff":"x","monomial":[]}],"bound":null})",
                            R"({"schema":"hyperlog/1","terms":[{"coeff":"1","monomial":[{"from":"w^","to":"w","exp":"1"}]}],"bound":null})"})
        EXPECT_EQ(error_of([&] { parse_json(bad); }), ErrorKind::SyntaxError) << bad;
}

TEST(Cli, JsonRoundTrip)
{
    gen::Rng rng(61);
    for (int i = 0; i < 200; ++i) {
        Series s = gen::series(rng, 4);
        if (i % 3 == 0)
            s = s.with_bound(gen::monomial(rng));
        EXPECT_TRUE(same(parse_json(format_json(s)), s));
    }
}

TEST(Cli, TextRoundTrip)
{
    gen::Rng rng(62);
    for (int i = 0; i < 200; ++i) {
        Series s = gen::series(rng, 4);
        if (i % 3 == 0)
            s = s.with_bound(gen::monomial(rng));
        EXPECT_TRUE(same(S(format_text(s)), s)) << format_text(s);
    }
}

TEST(Cli, Deterministic)
{
    for (const char* e : {"comp(l[w], x*l[1] + 1)", "inv(x + l[1])", "int(l[w])", "log(x*l[1] + 1)"}) {
        EXPECT_EQ(eval_text(e, 4), eval_text(e, 4));
        EXPECT_EQ(eval_text(e, 4, Format::Json), eval_text(e, 4, Format::Json));
    }
}

#include "generators.hpp"

#include "hyperlog/format.hpp"
#include "hyperlog/monomial.hpp"

#include <gtest/gtest.h>

using namespace hyperlog;

namespace {

const Ordinal w = Ordinal::omega();

Monomial l(const Ordinal& a, const Rational& r = 1)
{
    return hyperlog_monomial(a, r);
}

Monomial span(const Ordinal& lo, const Ordinal& hi, const Rational& r)
{
    return Monomial::interval(lo, hi, r);
}

}  // namespace

TEST(Monomial, MulExamples)
{
    EXPECT_TRUE(mono_mul(l(0), l(0, -1)).is_one());
    EXPECT_EQ(mono_mul(mono_mul(l(0), l(1)), mono_mul(l(1), l(2))), mono_mul(mono_mul(l(0), l(1, 2)), l(2)));
    Monomial m = mono_mul(hyperlog_deriv(w), l(3));
    EXPECT_EQ(m, Monomial::from_pieces({{0, 3, -1}, {4, w, -1}}));
    for (std::uint64_t b = 0; b <= 6; ++b)
        EXPECT_EQ(m.exponent_at(b), b == 3 ? 0 : -1) << b;
}

TEST(Monomial, PowExamples)
{
    EXPECT_EQ(mono_pow(l(0, 2), ratio(1, 2)), l(0));
    EXPECT_TRUE(mono_pow(mono_mul(l(0), l(w)), 0).is_one());
    EXPECT_EQ(mono_pow(hyperlog_deriv(w), -1), span(0, w, 1));
}

TEST(Monomial, CompareExamples)
{
    EXPECT_LT(l(1), l(0));
    EXPECT_LT(hyperlog_deriv(w), l(0, -1));
    EXPECT_LT(mono_mul(l(0), l(1, -5)), l(0));
    EXPECT_EQ(mono_compare(Monomial(), Monomial()), std::strong_ordering::equal);
    EXPECT_GT(l(w), Monomial());
    EXPECT_LT(hyperlog_dagger(w), Monomial());
}

TEST(Monomial, Canonical)
{
    // Merging and zero removal make equality structural.
    Monomial a = Monomial::from_pieces({{0, 2, 1}, {2, 5, 1}, {5, 6, 0}});
    EXPECT_EQ(a, span(0, 5, 1));
    EXPECT_EQ(a.pieces().size(), 1u);
    EXPECT_TRUE(Monomial::from_pieces({{1, 1, 3}}).is_one());
}

TEST(Monomial, MinSupport)
{
    EXPECT_EQ(mono_min_support(l(w)), w);
    EXPECT_EQ(mono_min_support(mono_mul(l(0, 2), l(3))), Ordinal(0));
    try {
        mono_min_support(Monomial());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IdentityMonomial);
    }
}

TEST(Monomial, Split)
{
    auto [a, b] = mono_split(mono_mul(l(0), l(w)), w);
    EXPECT_EQ(a, l(0));
    EXPECT_EQ(b, l(w));
    auto [c, d] = mono_split(hyperlog_deriv(w), 3);
    EXPECT_EQ(c, span(0, 3, -1));
    EXPECT_EQ(d, span(3, w, -1));
    auto [e, f] = mono_split(Monomial(), w);
    EXPECT_TRUE(e.is_one());
    EXPECT_TRUE(f.is_one());
}

TEST(Monomial, HyperlogFamilies)
{
    EXPECT_TRUE(hyperlog_deriv(0).is_one());
    EXPECT_EQ(hyperlog_dagger(0), l(0, -1));
    EXPECT_EQ(hyperlog_deriv(w), span(0, w, -1));
    EXPECT_EQ(hyperlog_dagger(w), span(0, ord_succ(w), -1));
    EXPECT_EQ(l(w), span(w, ord_succ(w), 1));
}

TEST(Monomial, Shift)
{
    EXPECT_EQ(mono_shift(l(0), w), l(w));
    Ordinal w2 = omega_pow(2);
    EXPECT_EQ(mono_shift(mono_mul(l(1), l(2, -1)), w2),
              mono_mul(l(ord_add(w2, 1)), l(ord_add(w2, 2), -1)));
    EXPECT_TRUE(mono_shift(Monomial(), w).is_one());
    // An infinite interval ending at w shifts onto [w+a, w*2).
    EXPECT_EQ(mono_shift(span(2, w, -1), w), span(ord_add(w, 2), ord_add(w, w), -1));
}

TEST(Monomial, GroupLaws)
{
    gen::Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        Monomial a = gen::monomial(rng), b = gen::monomial(rng), c = gen::monomial(rng);
        EXPECT_EQ(mono_mul(mono_mul(a, b), c), mono_mul(a, mono_mul(b, c)));
        EXPECT_EQ(mono_mul(a, b), mono_mul(b, a));
        EXPECT_EQ(mono_mul(a, Monomial()), a);
        EXPECT_TRUE(mono_mul(a, mono_inv(a)).is_one());
        EXPECT_EQ(mono_div(a, b), mono_mul(a, mono_inv(b)));
    }
}

TEST(Monomial, OrderCompatibility)
{
    gen::Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        Monomial a = gen::monomial(rng), b = gen::monomial(rng), c = gen::monomial(rng);
        auto ab = mono_compare(a, b);
        EXPECT_EQ(mono_compare(mono_mul(a, c), mono_mul(b, c)), ab);
        EXPECT_EQ(mono_compare(b, a), 0 <=> ab);
        // Comparison with 1 is the sign of the first exponent.
        EXPECT_EQ(mono_compare(a, Monomial()), mono_sign(a) <=> 0);
    }
}

TEST(Monomial, PowerLaws)
{
    gen::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Monomial m = gen::monomial(rng), n = gen::monomial(rng);
        Rational s = gen::small_rational(rng), t = gen::small_rational(rng);
        EXPECT_EQ(mono_pow(m, s + t), mono_mul(mono_pow(m, s), mono_pow(m, t)));
        EXPECT_EQ(mono_pow(mono_pow(m, s), t), mono_pow(m, s * t));
        EXPECT_EQ(mono_pow(mono_mul(m, n), s), mono_mul(mono_pow(m, s), mono_pow(n, s)));
    }
}

TEST(Monomial, SplitReassembles)
{
    gen::Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        Monomial m = gen::monomial(rng);
        Ordinal beta = gen::index(rng);
        auto [lo, hi] = mono_split(m, beta);
        EXPECT_EQ(mono_mul(lo, hi), m);
        if (!lo.is_one()) {
            EXPECT_LE(lo.support_sup(), beta);
        }
        if (!hi.is_one()) {
            EXPECT_GE(mono_min_support(hi), beta);
        }
    }
}

TEST(Monomial, ShiftPreservesOrderAndProducts)
{
    gen::Rng rng(5);
    const Ordinal shifts[] = {1, 3, w, omega_pow(2), omega_pow(w)};
    for (int i = 0; i < 200; ++i) {
        // Supports below w so every shift stays a valid index map.
        Monomial a = gen::monomial(rng, false), b = gen::monomial(rng, false);
        const Ordinal& g = shifts[i % 5];
        EXPECT_EQ(mono_compare(mono_shift(a, g), mono_shift(b, g)), mono_compare(a, b));
        EXPECT_EQ(mono_shift(mono_mul(a, b), g), mono_mul(mono_shift(a, g), mono_shift(b, g)));
    }
}

TEST(Monomial, DaggerOrdering)
{
    const Ordinal idx[] = {0, 1, 2, 5, w, ord_succ(w), omega_pow(2), omega_pow(w)};
    for (const auto& a : idx) {
        EXPECT_LE(hyperlog_dagger(a), l(0, -1));
        EXPECT_LT(hyperlog_dagger(a), Monomial());
        for (const auto& b : idx)
            if (b < a) {
                EXPECT_LT(hyperlog_dagger(a), hyperlog_dagger(b));
            }
    }
}

TEST(Monomial, TextRendering)
{
    EXPECT_EQ(format_monomial_text(l(0)), "x");
    EXPECT_EQ(format_monomial_text(mono_mul(l(0, 2), l(w, ratio(-1, 2)))), "x^2*l[w]^{-1/2}");
    EXPECT_EQ(format_monomial_text(span(3, w, -1)), "prod(l[3..w])^{-1}");
    EXPECT_EQ(format_monomial_text(Monomial()), "1");
}

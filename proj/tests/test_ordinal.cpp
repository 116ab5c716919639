#include "generators.hpp"
#include "triple_oracle.hpp"

#include "hyperlog/ordinal.hpp"

#include <gtest/gtest.h>

using namespace hyperlog;

namespace {

Ordinal ord(const char* s)
{
    return parse_ordinal(s);
}

const Ordinal w = Ordinal::omega();

}  // namespace

TEST(Ordinal, CompareExamples)
{
    EXPECT_LT(Ordinal(0), w);
    EXPECT_LT(ord("w+1"), ord("w*2"));
    EXPECT_GT(ord("w^w"), ord("w*5+3"));
    EXPECT_EQ(ord("w^2*2+w+1"), ord("w^2*2+w+1"));
}

TEST(Ordinal, AddExamples)
{
    EXPECT_EQ(ord_add(1, w), w);
    EXPECT_EQ(ord_add(w, 1), ord("w+1"));
    EXPECT_EQ(ord_add(ord("w^2+w*3"), ord("w^2*2")), ord("w^2*3"));
    EXPECT_NE(ord_add(1, w), ord_add(w, 1));
}

TEST(Ordinal, OmegaPow)
{
    EXPECT_EQ(omega_pow(0), Ordinal(1));
    EXPECT_EQ(omega_pow(1), w);
    EXPECT_EQ(omega_pow(w), ord("w^w"));
}

TEST(Ordinal, CnfList)
{
    EXPECT_EQ(monomial_cnf_list(ord("w^2*2+1")), (std::vector<Ordinal>{2, 2, 0}));
    EXPECT_TRUE(monomial_cnf_list(0).empty());
    EXPECT_EQ(monomial_cnf_list(ord("w^w")), std::vector<Ordinal>{w});
}

TEST(Ordinal, LambdaCoeff)
{
    Ordinal lam = ord("w*2+3");
    EXPECT_EQ(lambda_coeff(lam, ord("w^2")), 2u);
    EXPECT_EQ(lambda_coeff(lam, w), 3u);
    EXPECT_EQ(lambda_coeff(lam, ord("w^3")), 0u);
    EXPECT_EQ(lambda_coeff(ord("w^w*4"), ord("w^{w+1}")), 4u);
    // Not a power of w with successor exponent.
    for (const char* nu : {"0", "1", "5", "w^w", "w*2", "w^2+1", "w^{w*2}"})
        EXPECT_EQ(lambda_coeff(ord("w^w+w^3+w^2+w*7+9"), ord(nu)), 0u) << nu;
}

TEST(Ordinal, LimitAndSuccessor)
{
    EXPECT_TRUE(is_limit(w));
    EXPECT_FALSE(is_successor(w));
    EXPECT_TRUE(is_successor(ord("w+1")));
    EXPECT_FALSE(is_limit(ord("w+1")));
    EXPECT_FALSE(is_limit(0));
    EXPECT_FALSE(is_successor(0));
}

TEST(Ordinal, FiniteFastPathAgreesWithCnf)
{
    for (std::uint64_t n : {0ull, 1ull, 2ull, 63ull, 64ull, 1000ull}) {
        Ordinal a(n);
        Ordinal b = n ? Ordinal::from_cnf({{Ordinal(), n}}) : Ordinal();
        EXPECT_EQ(a, b);
        EXPECT_EQ(a.as_nat(), n);
        EXPECT_TRUE(b.is_finite());
        EXPECT_LT(a, w);
    }
}

TEST(Ordinal, ParseAndRender)
{
    for (const char* s : {"0", "7", "w", "w+1", "w*3+5", "w^2*2+w+1", "w^w", "w^{w+1}*2+w^w+3", "w^{w^w}"})
        EXPECT_EQ(to_string(ord(s)), s);
    // Non-canonical orderings are renormalized by ordinal addition.
    EXPECT_EQ(ord("1+w"), w);
    EXPECT_EQ(ord("w+w^2"), ord("w^2"));
    EXPECT_EQ(ord("w*2+w"), ord("w*3"));
    EXPECT_EQ(to_latex(ord("w^2*2+w+1")), "\\omega^{2}\\cdot 2+\\omega+1");
}

TEST(Ordinal, ParseErrors)
{
    for (const char* s : {"", "w^", "w*", "x", "w+", "3w", "w^(2"})
        EXPECT_THROW(ord(s), SyntaxError) << s;
}

TEST(Ordinal, TripleOracleExhaustive)
{
    auto all = oracle::all_triples(3);
    for (const auto& a : all) {
        Ordinal oa = oracle::to_ordinal(a);
        for (const auto& b : all) {
            Ordinal ob = oracle::to_ordinal(b);
            ASSERT_EQ(ord_compare(oa, ob), oracle::compare(a, b));
            ASSERT_EQ(ord_add(oa, ob), oracle::to_ordinal(oracle::add(a, b)));
        }
    }
}

TEST(Ordinal, AdditionLaws)
{
    gen::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        Ordinal a = gen::small_ordinal(rng), b = gen::small_ordinal(rng), c = gen::small_ordinal(rng);
        EXPECT_EQ(ord_add(ord_add(a, b), c), ord_add(a, ord_add(b, c)));
        EXPECT_LE(b, ord_add(a, b));
        if (b < c) {
            EXPECT_LT(ord_add(a, b), ord_add(a, c));
        }
        Ordinal s = ord_add(a, b);
        EXPECT_EQ(ord_add(a, ord_left_sub(a, s)), s);
    }
}

TEST(Ordinal, CnfListResums)
{
    gen::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Ordinal g = ord_add(gen::small_ordinal(rng), i % 3 ? Ordinal() : ord("w^w*2+w^3"));
        auto list = monomial_cnf_list(g);
        Ordinal sum;
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (k) {
                EXPECT_LE(list[k], list[k - 1]);
            }
            sum = ord_add(sum, omega_pow(list[k]));
        }
        EXPECT_EQ(sum, g);
    }
}

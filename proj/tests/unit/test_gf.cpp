#include "gf/galois_field.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>

using nemesys::gf::Element;
using nemesys::gf::FieldPolynomial;
using nemesys::gf::GaloisField;

TEST(GaloisField, MultiplicativeIdentity)
{
    GaloisField f;
    for (Element a = 0; a < 256; ++a)
        EXPECT_EQ(f.multiply(a, 1), a);
}

TEST(GaloisField, SmallProductNeedsNoReduction)
{
    GaloisField f;
    EXPECT_EQ(f.multiply(0x02, 0x02), 0x04);
}

TEST(GaloisField, ReductionMatchesLongDivisionOracle)
{
    GaloisField f;
    // 0x80 * x = x^8 -> x^4 + x^3 + x^2 + 1
    EXPECT_EQ(nemesys::oracle::gf_mul(0x80, 0x02), 0x1D);
    EXPECT_EQ(f.multiply(0x80, 0x02), 0x1D);
}

TEST(GaloisField, MultiplyAgreesWithOracleExhaustively)
{
    GaloisField f;
    for (unsigned a = 0; a < 256; ++a)
        for (unsigned b = 0; b < 256; ++b)
            ASSERT_EQ(f.multiply(static_cast<Element>(a), static_cast<Element>(b)),
                      nemesys::oracle::gf_mul(static_cast<Element>(a), static_cast<Element>(b)))
                << a << " * " << b;
}

TEST(GaloisField, InverseOfEveryNonzeroElement)
{
    GaloisField f;
    EXPECT_EQ(f.inverse(1), 1);
    for (unsigned a = 1; a < 256; ++a)
        EXPECT_EQ(f.multiply(static_cast<Element>(a), f.inverse(static_cast<Element>(a))), 1);
}

TEST(GaloisField, ZeroHasNoInverseOrLog)
{
    GaloisField f;
    EXPECT_THROW(f.inverse(0), std::domain_error);
    EXPECT_THROW(f.log(0), std::domain_error);
}

TEST(GaloisField, AlphaPowerWrapsAtGroupOrder)
{
    GaloisField f;
    EXPECT_EQ(f.alpha_power(0), 1);
    EXPECT_EQ(f.alpha_power(255), 1);
    EXPECT_EQ(f.alpha_power(-1), f.inverse(2));
    // alpha is x, built by repeated multiplication
    Element x = 1;
    for (int e = 0; e < 300; ++e) {
        EXPECT_EQ(f.alpha_power(e), x) << e;
        x = nemesys::oracle::gf_mul(x, 2);
    }
}

TEST(GaloisField, AlphaPowersEnumerateNonzeroElementsOnce)
{
    GaloisField f;
    std::set<Element> seen;
    for (int e = 0; e < 255; ++e)
        seen.insert(f.alpha_power(e));
    EXPECT_EQ(seen.size(), 255U);
    EXPECT_FALSE(seen.contains(0));
}

TEST(GaloisField, AssociativeAndDistributiveRandomized)
{
    GaloisField f;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(0, 255);
    for (int i = 0; i < 20000; ++i) {
        const auto a = static_cast<Element>(d(rng));
        const auto b = static_cast<Element>(d(rng));
        const auto c = static_cast<Element>(d(rng));
        ASSERT_EQ(f.multiply(a, f.multiply(b, c)), f.multiply(f.multiply(a, b), c));
        ASSERT_EQ(f.multiply(a, b), f.multiply(b, a));
        ASSERT_EQ(f.multiply(a, GaloisField::add(b, c)),
                  GaloisField::add(f.multiply(a, b), f.multiply(a, c)));
        ASSERT_EQ(GaloisField::add(a, a), 0);
    }
}

TEST(GaloisField, EvalPolyBasics)
{
    GaloisField f;
    EXPECT_EQ(f.eval_poly(FieldPolynomial{}, 0x53), 0);
    EXPECT_EQ(f.eval_poly(FieldPolynomial{{0x7A}}, 0x53), 0x7A);
    // x + 1 at alpha: term by term
    const Element alpha = f.alpha_power(1);
    EXPECT_EQ(f.eval_poly(FieldPolynomial{{1, 1}}, alpha), alpha ^ 1);
}

TEST(GaloisField, EvalOfProductIsProductOfEvals)
{
    GaloisField f;
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(0, 255);
    std::uniform_int_distribution<int> len(0, 8);
    for (int i = 0; i < 2000; ++i) {
        FieldPolynomial a, b;
        for (int j = len(rng); j > 0; --j)
            a.coefficients.push_back(static_cast<Element>(d(rng)));
        for (int j = len(rng); j > 0; --j)
            b.coefficients.push_back(static_cast<Element>(d(rng)));
        const auto x = static_cast<Element>(d(rng));
        ASSERT_EQ(f.eval_poly(f.poly_multiply(a, b), x),
                  f.multiply(f.eval_poly(a, x), f.eval_poly(b, x)));
    }
}

TEST(GaloisField, MinimalPolynomialsOfGf256)
{
    GaloisField f;
    // alpha's minimal polynomial is the primitive polynomial itself
    const std::vector<std::uint8_t> m1{1, 0, 1, 1, 1, 0, 0, 0, 1};
    EXPECT_EQ(f.minimal_polynomial(1), m1);
    EXPECT_EQ(f.minimal_polynomial(3).size(), 9U);
    EXPECT_EQ(f.cyclotomic_coset(1).size(), 8U);
}

TEST(GaloisField, DefaultPolynomialsArePrimitive)
{
    for (unsigned m = 2; m <= 16; ++m)
        EXPECT_NO_THROW(GaloisField{m}) << m;
    EXPECT_THROW(GaloisField(8, 0x11B), std::invalid_argument);  // AES polynomial: irreducible, not primitive
    EXPECT_THROW(GaloisField{1}, std::invalid_argument);
}

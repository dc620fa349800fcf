#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace k3fod;

namespace {

Form F(long a, long b, long c) { return Form(a, b, c); }

std::vector<long> coeffs(long d)
{
    std::vector<long> out;
    for (const Int& c : class_polynomial(Discriminant(d)).coefficients)
        out.push_back(c.get_si());
    return out;
}

// |x - y| <= 2^e |y| (or 2^e when y = 0)
bool close(const Complex& x, const Complex& y, long e)
{
    const Real diff = abs(x - y);
    Real scale = abs(y);
    if (scale.is_zero())
        scale = Real(1, diff.precision());
    return diff.is_zero() || (diff / scale).exponent() <= e;
}

} // namespace

TEST(Modular, SpecialValues)
{
    const long bits = 256;
    const JValue ji = j_of_form(F(1, 0, 1), bits);
    EXPECT_TRUE(close(ji.j_raw, Complex(1728, bits), -bits + 8));
    EXPECT_TRUE(close(ji.j_normalized, Complex(1, bits), -bits + 8));
    const JValue jr = j_of_form(F(1, 1, 1), bits);
    EXPECT_LT(abs(jr.j_raw).exponent(), -bits + 16);
    const JValue j2i = j_of_form(F(1, 0, 4), bits);
    EXPECT_TRUE(close(j2i.j_raw, Complex(287496, bits), -bits + 8));
    EXPECT_EQ(recognize_rational(j2i.j_normalized, 1000), Rat(1331, 8));
    EXPECT_EQ(recognize_rational(ji.j_normalized, 1000), Rat(1));
}

TEST(Modular, NumericTauIsReduced)
{
    const long bits = 200;
    // i + 7 and -1/(2i) are both equivalent to i or 2i
    const Complex t1(Real(7L, bits), Real(1L, bits));
    EXPECT_TRUE(close(j_of_tau(t1, bits).j_raw, Complex(1728, bits), -bits + 16));
    const Complex t2(Real(0L, bits), Real(1L, bits) / Real(2L, bits));
    EXPECT_TRUE(close(j_of_tau(t2, bits).j_raw, Complex(287496, bits), -bits + 16));
    EXPECT_THROW(j_of_tau(Complex(Real(0L, bits), Real(-1L, bits)), bits), Error);
}

TEST(Modular, NonRealConjugate)
{
    const long bits = 256;
    const JValue j = j_of_form(F(2, 1, 3), bits);
    EXPECT_FALSE(recognize_rational(j.j_raw, Int(1) << 64).has_value());
}

TEST(Modular, ClassPolynomials)
{
    EXPECT_EQ(coeffs(-3), (std::vector<long>{0, 1}));
    EXPECT_EQ(coeffs(-4), (std::vector<long>{-1728, 1}));
    EXPECT_EQ(coeffs(-7), (std::vector<long>{3375, 1}));
    EXPECT_EQ(coeffs(-8), (std::vector<long>{-8000, 1}));
    EXPECT_EQ(coeffs(-15), (std::vector<long>{-121287375, 191025, 1}));
    EXPECT_EQ(coeffs(-16), (std::vector<long>{-287496, 1}));
    EXPECT_EQ(coeffs(-23), (std::vector<long>{12771880859375, -5151296875, 3491750, 1}));
    EXPECT_EQ(coeffs(-64), (std::vector<long>{-7367066619912, -82226316240, 1}));
    const ClassPolynomial h56 = class_polynomial(Discriminant(-56L));
    const std::vector<Int> expect56{Int("10064086044321563803648"), Int("2257767342088912896"),
                                    Int("2059647197077504"), Int("-16220384512"), Int(1)};
    EXPECT_EQ(h56.coefficients, expect56);
    EXPECT_TRUE(h56.certified);
    EXPECT_EQ(h56.degree(), 4u);
    EXPECT_EQ(ring_class_degree(Discriminant(-64L)), 2u);
    EXPECT_EQ(ring_class_degree(Discriminant(-23L)), 3u);
    EXPECT_EQ(ring_class_degree(Discriminant(-4L)), 1u);
}

TEST(Modular, ParallelRootsAgree)
{
    const Discriminant d(-260L);
    const long bits = class_polynomial_bits(d);
    const auto a = class_roots(d, bits, 1), b = class_roots(d, bits, 3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_TRUE(a[i] == b[i]);
}

TEST(Modular, RecognizeRational)
{
    const long bits = 200;
    const Complex third(Real(Rat(-7, 3), bits), Real(bits));
    EXPECT_EQ(recognize_rational(third, 10), Rat(-7, 3));
    EXPECT_FALSE(recognize_rational(third, 2).has_value());
    const Complex root2(sqrt(Real(2L, bits)), Real(bits));
    EXPECT_FALSE(recognize_rational(root2, Int(1) << 40).has_value());
}

TEST(ModularProperty, AgreesWithProductFormula)
{
    // j at random reduced CM points against the eta-quotient oracle
    oracle::FormGen gen(31, 5000);
    for (int i = 0; i < 40; ++i) {
        const auto f = oracle::reduce(gen.next());
        const long bits = 160 + 32 * (i % 4);
        const Complex lib = j_of_form(f.form(), bits).j_raw;
        const Complex ref = oracle::j_product(oracle::tau_numeric(f, bits), bits);
        EXPECT_TRUE(close(lib, ref, -bits + 24)) << f.form();
    }
}

TEST(ModularProperty, ModularInvariance)
{
    const long bits = 192;
    oracle::FormGen gen(32, 3000);
    for (int i = 0; i < 30; ++i) {
        const auto f = gen.next();
        // j only depends on the SL2(Z) class of the form
        const auto g = oracle::transform(f, 2, 1, 1, 1);
        const Complex a = j_of_tau(oracle::tau_numeric(f, bits), bits).j_raw;
        const Complex b = j_of_tau(oracle::tau_numeric(g, bits), bits).j_raw;
        EXPECT_TRUE(close(a, b, -bits + 32)) << f.form();
    }
}

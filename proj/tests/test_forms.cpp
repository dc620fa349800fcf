#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace k3fod;

namespace {

Form F(long a, long b, long c) { return Form(a, b, c); }

} // namespace

TEST(Forms, ConstructionValidates)
{
    EXPECT_THROW(F(1, 0, -1), Error);
    EXPECT_THROW(F(0, 1, 1), Error);
    EXPECT_THROW(F(1, 2, 1), Error);
    try {
        F(1, 0, -1);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotPositiveDefinite);
    }
    try {
        F(1, 3, 1);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotNegativeDiscriminant);
    }
}

TEST(Forms, DiscriminantValidates)
{
    EXPECT_THROW(Discriminant(-5L), Error);
    EXPECT_THROW(Discriminant(0L), Error);
    EXPECT_THROW(Discriminant(4L), Error);
    EXPECT_NO_THROW(Discriminant(-3L));
    EXPECT_NO_THROW(Discriminant(-4L));
}

TEST(Forms, Discriminant)
{
    EXPECT_EQ(discriminant(F(1, 1, 6)).value(), -23);
    EXPECT_EQ(discriminant(F(1, 0, 1)).value(), -4);
    EXPECT_EQ(discriminant(F(4, 0, 4)).value(), -64);
}

TEST(Forms, Primitivity)
{
    EXPECT_EQ(degree_of_primitivity(F(4, 0, 4)), 4);
    EXPECT_EQ(degree_of_primitivity(F(1, 1, 6)), 1);
    EXPECT_EQ(degree_of_primitivity(F(30, 0, 30)), 30);
    EXPECT_EQ(primitive_part(F(4, 0, 4)), F(1, 0, 1));
    EXPECT_EQ(primitive_part(F(2, 1, 3)), F(2, 1, 3));
    EXPECT_EQ(primitive_part(F(30, 0, 30)), F(1, 0, 1));
}

TEST(Forms, Reduction)
{
    // proper equivalence: (6,5,2) -> (2,-5,6) -> (2,-1,3)
    EXPECT_EQ(reduce(F(6, 5, 2)), F(2, -1, 3));
    EXPECT_EQ(reduce(F(1, 1, 6)), F(1, 1, 6));
    EXPECT_EQ(reduce(F(2, -1, 2)), F(2, 1, 2));
    EXPECT_TRUE(is_reduced(F(2, 1, 3)));
    EXPECT_FALSE(is_reduced(F(6, 5, 2)));
    EXPECT_FALSE(is_reduced(F(2, -2, 3)));
}

TEST(Forms, CompositionExamples)
{
    EXPECT_EQ(compose(F(2, 1, 3), F(2, 1, 3)), F(2, -1, 3));
    EXPECT_EQ(compose(F(1, 1, 6), F(2, 1, 3)), F(2, 1, 3));
    EXPECT_EQ(compose(F(2, 1, 3), F(2, -1, 3)), F(1, 1, 6));
    EXPECT_EQ(inverse(F(2, 1, 3)), F(2, -1, 3));
    EXPECT_EQ(inverse(F(1, 0, 1)), F(1, 0, 1));
    EXPECT_EQ(inverse(F(4, 1, 6)), F(4, -1, 6));
    EXPECT_EQ(identity_form(Discriminant(-23L)), F(1, 1, 6));
    EXPECT_EQ(identity_form(Discriminant(-4L)), F(1, 0, 1));
    EXPECT_EQ(identity_form(Discriminant(-64L)), F(1, 0, 16));
    EXPECT_EQ(power(F(2, 1, 3), 3L), F(1, 1, 6));
    EXPECT_EQ(power(F(2, 1, 3), 0L), F(1, 1, 6));
    EXPECT_EQ(power(F(2, 1, 3), -1L), F(2, -1, 3));
}

TEST(Forms, CompositionErrors)
{
    try {
        compose(F(1, 1, 6), F(1, 0, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::MismatchedDiscriminant);
    }
    try {
        compose(F(2, 0, 2), F(1, 0, 4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ImprimitiveInput);
    }
}

TEST(FormsProperty, ReductionIsCanonical)
{
    oracle::FormGen gen(11);
    for (int i = 0; i < 400; ++i) {
        const auto f = gen.next();
        const Form r = reduce(f.form());
        EXPECT_TRUE(is_reduced(r));
        EXPECT_EQ(discriminant(r).value(), f.disc());
        EXPECT_EQ(oracle::of(r), oracle::reduce(f));
        EXPECT_EQ(reduce(r), r);
    }
}

TEST(FormsProperty, CompositionMatchesDirichletOracle)
{
    oracle::FormGen gen(12, 1500);
    for (int i = 0; i < 300; ++i) {
        const auto f = oracle::reduce(gen.next());
        const auto cls = oracle::reduced_forms(f.disc());
        const auto g = cls[static_cast<std::size_t>(gen.uniform(0, static_cast<long>(cls.size()) - 1))];
        EXPECT_EQ(oracle::of(compose(f.form(), g.form())), oracle::compose(f, g)) << f.form() << " * " << g.form();
    }
}

TEST(FormsProperty, GroupLaws)
{
    oracle::FormGen gen(13, 2000);
    for (int i = 0; i < 200; ++i) {
        const auto f3 = oracle::reduce(gen.next());
        const auto cls = oracle::reduced_forms(f3.disc());
        const Form f = f3.form();
        const Form g = cls[static_cast<std::size_t>(gen.uniform(0, static_cast<long>(cls.size()) - 1))].form();
        const Form h = cls[static_cast<std::size_t>(gen.uniform(0, static_cast<long>(cls.size()) - 1))].form();
        const Form e = identity_form(discriminant(f));
        EXPECT_EQ(compose(f, g), compose(g, f));
        EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
        EXPECT_EQ(compose(f, e), f);
        EXPECT_EQ(compose(f, inverse(f)), e);
        EXPECT_EQ(power(f, 5L), compose(power(f, 2L), power(f, 3L)));
        EXPECT_EQ(power(f, static_cast<long>(cls.size())), e);
    }
}

TEST(Forms, Printing)
{
    std::ostringstream os;
    os << F(2, -1, 3);
    EXPECT_EQ(os.str(), "(2,-1,3)");
    EXPECT_EQ(F(2, -1, 3).str(), "2,-1,3");
}

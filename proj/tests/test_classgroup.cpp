#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"

using namespace k3fod;

namespace {

Form F(long a, long b, long c) { return Form(a, b, c); }
Discriminant D(long d) { return Discriminant(d); }

// h(O) = h(O_K) f / [O_K^* : O^*] prod_{p | f} (1 - (d_K/p) / p)
long conductor_formula(long d)
{
    const FundamentalData fd = fundamental_data(D(d));
    const long hK = static_cast<long>(oracle::reduced_forms(fd.d_K.get_si()).size());
    Rat h(hK * fd.f.get_si());
    for (const auto& [p, e] : factor(fd.f))
        h *= Rat(1) - Rat(kronecker(fd.d_K, p), p);
    if (fd.f > 1) {
        if (fd.d_K == -4)
            h /= 2;
        if (fd.d_K == -3)
            h /= 3;
    }
    return Int(h).get_si();
}

} // namespace

TEST(ClassGroup, Enumerate)
{
    const ClassGroup G = enumerate(D(-23));
    EXPECT_EQ(G.elements(), (std::vector<Form>{F(1, 1, 6), F(2, 1, 3), F(2, -1, 3)}));
    ASSERT_EQ(G.decomposition().size(), 1u);
    EXPECT_EQ(G.decomposition()[0].order, 3u);
    EXPECT_EQ(enumerate(D(-4)).elements(), std::vector<Form>{F(1, 0, 1)});
    EXPECT_EQ(enumerate(D(-92)).order(), 3u);
    EXPECT_EQ(class_number(D(-23)), 3u);
    EXPECT_EQ(class_number(D(-92)), 3u);
    EXPECT_EQ(class_number(D(-64)), 2u);
    EXPECT_EQ(enumerate(D(-64)).elements(), (std::vector<Form>{F(1, 0, 16), F(4, 4, 5)}));
}

TEST(ClassGroup, Squares)
{
    EXPECT_EQ(squares_subgroup(enumerate(D(-23))).size(), 3u);
    EXPECT_EQ(squares_subgroup(enumerate(D(-4))), std::vector<Form>{F(1, 0, 1)});
    std::set<oracle::F3> brute;
    for (const auto& s : oracle::reduced_forms(-56))
        brute.insert(oracle::compose(s, s));
    std::set<oracle::F3> lib;
    for (const Form& f : squares_subgroup(enumerate(D(-56))))
        lib.insert(oracle::of(f));
    EXPECT_EQ(lib, brute);
}

TEST(ClassGroup, Genera)
{
    const auto p23 = genus_partition(enumerate(D(-23)));
    EXPECT_EQ(p23.genus_count(), 1u);
    EXPECT_EQ(p23.classes_per_genus(), 3u);
    EXPECT_EQ(genus_partition(enumerate(D(-4))).cosets.size(), 1u);
    const auto p56 = genus_partition(enumerate(D(-56)));
    EXPECT_EQ(p56.genus_count(), 2u);
    EXPECT_EQ(p56.classes_per_genus(), 2u);
    EXPECT_EQ(classes_per_genus(D(-23)), 3u);
    EXPECT_EQ(classes_per_genus(D(-4)), 1u);
    EXPECT_EQ(classes_per_genus(D(-56)), 2u);
}

TEST(ClassGroup, TwoTorsion)
{
    EXPECT_FALSE(is_two_torsion(F(2, 1, 3)));
    EXPECT_TRUE(is_two_torsion(F(1, 0, 1)));
    EXPECT_TRUE(is_two_torsion(F(4, 4, 5)));
    EXPECT_THROW(is_two_torsion(F(6, 5, 2)), Error);
    EXPECT_THROW(is_two_torsion(F(2, 0, 2)), Error);
    EXPECT_FALSE(is_one_class_per_genus(D(-23)));
    EXPECT_TRUE(is_one_class_per_genus(D(-4)));
    EXPECT_FALSE(is_one_class_per_genus(D(-56)));
}

TEST(ClassGroup, FundamentalData)
{
    auto fd = fundamental_data(D(-64));
    EXPECT_EQ(fd.d_K, -4);
    EXPECT_EQ(fd.f, 4);
    fd = fundamental_data(D(-23));
    EXPECT_EQ(fd.d_K, -23);
    EXPECT_EQ(fd.f, 1);
    fd = fundamental_data(D(-92));
    EXPECT_EQ(fd.d_K, -23);
    EXPECT_EQ(fd.f, 2);
    EXPECT_EQ(distinct_fields({D(-4), D(-16), D(-64)}), std::set<Int>{Int(-4)});
    EXPECT_EQ(distinct_fields({D(-23), D(-92)}), std::set<Int>{Int(-23)});
}

TEST(ClassGroup, SmallScans)
{
    auto ds = [](std::int64_t bound) {
        std::vector<long> out;
        for (const auto& r : scan_one_class_per_genus(bound))
            out.push_back(r.d.get_si());
        return out;
    };
    EXPECT_EQ(ds(20), (std::vector<long>{-3, -4, -7, -8, -11, -12, -15, -16, -19, -20}));
    EXPECT_EQ(ds(4), (std::vector<long>{-3, -4}));
}

TEST(ClassGroup, ScanIsThreadIndependent)
{
    EXPECT_EQ(scan_one_class_per_genus(3000, 1), scan_one_class_per_genus(3000, 4));
}

TEST(ClassGroup, ScanRecordFields)
{
    const ScanRecord r = scan_record(D(-60));
    EXPECT_EQ(r.h, 2u);
    EXPECT_EQ(r.g, 2u);
    EXPECT_EQ(r.n, 1u);
    EXPECT_EQ(r.d_K, -15);
    EXPECT_EQ(r.f, 2);
}

TEST(ClassGroup, GenusCharacters)
{
    EXPECT_EQ(genus_characters(F(1, 1, 6)), std::vector<int>{1});
    for (long d : {-56L, -84L, -120L, -23L, -4L, -32L, -96L, -420L}) {
        const auto e = genus_characters(identity_form(D(d)));
        EXPECT_TRUE(std::all_of(e.begin(), e.end(), [](int x) { return x == 1; })) << d;
    }
    const auto p56 = genus_partition(enumerate(D(-56)));
    EXPECT_NE(genus_characters(p56.cosets[0].front()), genus_characters(p56.cosets[1].front()));
}

TEST(ClassGroupProperty, AgreesWithBruteForce)
{
    for (long D0 = 3; D0 <= 1500; ++D0) {
        if (D0 % 4 != 0 && D0 % 4 != 3)
            continue;
        const auto brute = oracle::reduced_forms(-D0);
        const ClassGroup G = enumerate(D(-D0));
        std::vector<oracle::F3> lib;
        for (const Form& f : G.elements())
            lib.push_back(oracle::of(f));
        std::sort(lib.begin(), lib.end());
        ASSERT_EQ(lib, brute) << -D0;
        ASSERT_EQ(static_cast<long>(G.order()), conductor_formula(-D0)) << -D0;

        Int prod = 1;
        for (const auto& c : G.decomposition()) {
            prod *= c.order;
            EXPECT_EQ(G.element_order(c.generator), c.order);
        }
        EXPECT_EQ(prod, G.order()) << -D0;
        for (std::size_t i = 1; i < G.decomposition().size(); ++i)
            EXPECT_TRUE(divides(G.decomposition()[i - 1].order, G.decomposition()[i].order)) << -D0;
    }
}

TEST(ClassGroupProperty, GenusCountAndCharacters)
{
    for (long D0 = 3; D0 <= 1200; ++D0) {
        if (D0 % 4 != 0 && D0 % 4 != 3)
            continue;
        const ClassGroup G = enumerate(D(-D0));
        const GenusPartition P = genus_partition(G);
        // number of genera is a power of two and the cosets partition the group
        const std::size_t g = P.genus_count();
        EXPECT_EQ(g & (g - 1), 0u) << -D0;
        std::size_t total = 0;
        for (const auto& c : P.cosets)
            total += c.size();
        EXPECT_EQ(total, G.order());
        // characters are constant on genera and separate them
        std::map<std::vector<int>, std::size_t> seen;
        for (std::size_t i = 0; i < P.cosets.size(); ++i) {
            const auto v = genus_characters(P.cosets[i].front());
            for (const Form& f : P.cosets[i])
                ASSERT_EQ(genus_characters(f), v) << f;
            ASSERT_TRUE(seen.emplace(v, i).second) << -D0;
        }
        // exactly 2^(#characters - 1) genera
        const auto nchar = genus_characters(G.identity()).size();
        EXPECT_EQ(g, std::size_t{1} << (nchar == 0 ? 0 : nchar - 1)) << -D0;
    }
}

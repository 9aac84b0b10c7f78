#include "test_support.hpp"

#include <quartic/roots.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace quartic;
using quartic::testing::random_upoly;

namespace {

UPoly from_roots(const std::vector<Rat>& roots)
{
    UPoly p = UPoly::constant(1);
    for (const auto& r : roots) p *= UPoly{-r, Rat(1)};
    return p;
}

int total_multiplicity(const std::vector<RootCluster>& cs)
{
    return std::accumulate(cs.begin(), cs.end(), 0, [](int a, const RootCluster& c) { return a + c.multiplicity; });
}

void expect_disjoint(const std::vector<RootCluster>& cs)
{
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            EXPECT_FALSE(cs[i].box.intersects(cs[j].box)) << i << " " << j;
}

} // namespace

TEST(IsolateRoots, FourthRootsOfUnity)
{
    auto cs = isolate_roots(UPoly{Rat(-1), 0, 0, 0, Rat(1)});
    ASSERT_EQ(cs.size(), 4u);
    expect_disjoint(cs);
    // sorted by center: -1, -i, i, 1
    EXPECT_TRUE(cs[0].box.contains(Rat(-1)));
    EXPECT_TRUE(cs[1].box.contains(Rat(0), Rat(-1)));
    EXPECT_TRUE(cs[2].box.contains(Rat(0), Rat(1)));
    EXPECT_TRUE(cs[3].box.contains(Rat(1)));
    for (const auto& c : cs) EXPECT_EQ(c.multiplicity, 1);
}

TEST(IsolateRoots, MultiplicityFromSquarefreeDecomposition)
{
    UPoly p = from_roots({Rat(1), Rat(1), Rat(1), Rat(-2)});
    auto cs = isolate_roots(p);
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_TRUE(cs[0].box.contains(Rat(-2)));
    EXPECT_EQ(cs[0].multiplicity, 1);
    EXPECT_TRUE(cs[1].box.contains(Rat(1)));
    EXPECT_EQ(cs[1].multiplicity, 3);
}

TEST(IsolateRoots, FermatRestrictedToCoordinateLine)
{
    // y^4 + z^4 on x = 0, in the chart z = 1
    auto cs = isolate_roots(UPoly{Rat(1), 0, 0, 0, Rat(1)});
    ASSERT_EQ(cs.size(), 4u);
    expect_disjoint(cs);
    for (const auto& c : cs) {
        EXPECT_EQ(c.multiplicity, 1);
        EXPECT_FALSE(c.real);
        // roots have |re| = |im| = 1/sqrt 2
        EXPECT_LT(c.box.re_lo * c.box.re_lo, make_rat(1, 2) + make_rat(1, 1000));
    }
}

TEST(IsolateRoots, Errors)
{
    EXPECT_THROW(isolate_roots(UPoly{}), std::domain_error);
    EXPECT_THROW(isolate_roots(UPoly{Rat(1), Rat(1)}, {16, 1024}), std::invalid_argument);
    EXPECT_THROW(distinct_root_count(UPoly{}), std::domain_error);
    EXPECT_TRUE(isolate_roots(UPoly{Rat(5)}).empty());
}

TEST(IsolateRoots, RandomRationalRootsAreContained)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rat> roots;
        int n = 2 + trial % 6;
        for (int i = 0; i < n; ++i) roots.push_back(make_rat(uniform_symmetric(rng, 30), 1 + rng() % 7));
        // a complex pair too, every other trial
        UPoly p = from_roots(roots);
        if (trial % 2) p *= UPoly{Rat(uniform_symmetric(rng, 9) * uniform_symmetric(rng, 9) + 1), Rat(0), Rat(1)};
        auto cs = isolate_roots(p);
        EXPECT_EQ(total_multiplicity(cs), p.degree());
        EXPECT_EQ(static_cast<int>(cs.size()), distinct_root_count(p));
        expect_disjoint(cs);
        for (const auto& r : roots) {
            int hits = 0;
            for (const auto& c : cs) hits += c.box.contains(r);
            EXPECT_EQ(hits, 1) << p << " root " << r;
        }
    }
}

TEST(IsolateRoots, RandomPolynomialsSumOfMultiplicities)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        UPoly a = random_upoly(rng, 1 + trial % 7, 50), b = random_upoly(rng, 1 + trial % 3, 5);
        UPoly p = (trial % 3 == 0) ? a * b * b : a * b;
        auto cs = isolate_roots(p);
        EXPECT_EQ(total_multiplicity(cs), p.degree()) << p;
        EXPECT_EQ(static_cast<int>(cs.size()), distinct_root_count(p)) << p;
        expect_disjoint(cs);
        for (const auto& c : cs) EXPECT_TRUE(c.box.valid());
    }
}

TEST(IsolateRoots, HighDegreeCyclotomicStyle)
{
    // x^24 - 1: 24 simple roots on the unit circle
    std::vector<Rat> c(25, Rat(0));
    c[0] = -1;
    c[24] = 1;
    auto cs = isolate_roots(UPoly(c));
    EXPECT_EQ(cs.size(), 24u);
    expect_disjoint(cs);
}

TEST(Refine, ShrinksInsideOriginalBox)
{
    auto cs = isolate_roots(UPoly{Rat(-2), 0, Rat(1)} * UPoly{Rat(1), Rat(1), Rat(1)});
    Rat target(1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), 64);
    for (const auto& c : cs) {
        RootCluster r = refine(c, 64);
        EXPECT_LE(r.box.width(), target);
        EXPECT_TRUE(c.box.contains(r.box));
        EXPECT_EQ(r.multiplicity, c.multiplicity);
        EXPECT_EQ(refine(r, 64).box, r.box);
    }
    // the real roots are +-sqrt 2
    for (const auto& c : cs)
        if (c.real) {
            RootCluster r = refine(c, 64);
            Rat lo = abs(r.box.re_lo), hi = abs(r.box.re_hi);
            if (lo > hi) std::swap(lo, hi);
            EXPECT_LE(lo * lo, Rat(2));
            EXPECT_GE(hi * hi, Rat(2));
        }
}

TEST(Refine, ContainsKnownRoot)
{
    UPoly p = from_roots({make_rat(9, 10), make_rat(11, 10), Rat(1)});
    for (const auto& c : isolate_roots(p)) {
        RootCluster r = refine(c, 64);
        int hits = 0;
        for (Rat q : {make_rat(9, 10), make_rat(11, 10), Rat(1)}) hits += r.box.contains(q);
        EXPECT_EQ(hits, 1);
    }
}

TEST(DistinctRootCount, ContactProfiles)
{
    // (x-1)^2 (x+3)^2: bitangent-type restriction
    EXPECT_EQ(distinct_root_count(from_roots({Rat(1), Rat(1), Rat(-3), Rat(-3)})), 2);
    // (x-2)^3 x: flex-line restriction
    EXPECT_EQ(distinct_root_count(from_roots({Rat(2), Rat(2), Rat(2), Rat(0)})), 2);
    EXPECT_EQ(distinct_root_count(from_roots({Rat(2), Rat(5), Rat(-1), Rat(0)})), 4);
    EXPECT_EQ(distinct_root_count(UPoly{Rat(7)}), 0);
}

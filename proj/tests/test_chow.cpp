#include <quartic/chow.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace quartic;

namespace {

ChowClass random_class(std::mt19937_64& rng)
{
    ChowClass c;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) c.at(a, b) = make_rat(uniform_symmetric(rng, 20), 1 + std::abs(uniform_symmetric(rng, 6)));
    return c;
}

} // namespace

TEST(Chow, RingAxioms)
{
    std::mt19937_64 rng(31);
    for (int n = 0; n < 100; ++n) {
        ChowClass x = random_class(rng), y = random_class(rng), z = random_class(rng);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(ChowClass(1) * x, x);
    }
}

TEST(Chow, Relations)
{
    ChowClass h1 = ChowClass::H1(), h2 = ChowClass::H2();
    EXPECT_EQ(h1 * h1 * h1, ChowClass());
    EXPECT_EQ(h2 * h2 * h2, ChowClass());
    EXPECT_EQ((h1 + h2) * (h1 + h2), h1 * h1 + h1 * h2 * Rat(2) + h2 * h2);
    EXPECT_EQ(((h1 + h2) * (h1 + h2)).to_string(), "H1^2 + 2*H1*H2 + H2^2");
    EXPECT_EQ(pushforward_eta(h1 * h1), (std::array<Rat, 3>{Rat(1), Rat(0), Rat(0)}));
    EXPECT_EQ(pushforward_eta(h1), (std::array<Rat, 3>{Rat(0), Rat(0), Rat(0)}));
    // [V] restricted to a fiber of the first factor is a line: H1^2 (H1 + H2) = H1^2 H2
    EXPECT_EQ(pushforward_eta_from_V(h1), (std::array<Rat, 3>{Rat(1), Rat(0), Rat(0)}));
}

TEST(Chow, ToddAndChernCharacter)
{
    ChowClass td = todd_T_eta();
    EXPECT_EQ(td.at(0, 0), 1);
    EXPECT_EQ(td.at(1, 0), 1);
    EXPECT_EQ(td.at(0, 1), make_rat(-1, 2));
    EXPECT_EQ(td.degree_part(2), ChowClass::monomial(0, 2, make_rat(1, 12)) + ChowClass::monomial(1, 1, make_rat(-4, 12)) +
                                     ChowClass::monomial(2, 0, make_rat(4, 12)));
    ChowClass ch = ch_log_tangent();
    EXPECT_EQ(ch, ChowClass(2) - ChowClass::H1() - ChowClass::monomial(2, 0, make_rat(13, 2)));
}

TEST(Chow, GrrFirstChernClass)
{
    GrrLedger g = grr_first_chern();
    EXPECT_EQ(g.rank, 1);
    EXPECT_EQ(g.c1.first, 0);
    EXPECT_EQ(g.c1.second, -7);
    GrrLedger h = grr_first_chern(true);
    EXPECT_EQ(h.pushed, g.pushed);
}

TEST(Chow, DegreeBounds)
{
    EXPECT_EQ(degree_bound({18, 12}), 84);
    EXPECT_EQ(degree_bound({18, 6}), 42);
    EXPECT_EQ(degree_bound({18, 4}), 28);
    EXPECT_EQ(degree_bound({0, 5}), 35);
    for (const auto& c : lifted_fiber_classes()) EXPECT_GE(degree_bound(c), make_rat(c.a, 2));
    EXPECT_EQ(lifted_fiber_classes().size(), 5u);
}

TEST(Chow, LogNormalDegree)
{
    EXPECT_EQ(log_normal_degree(0, 3, 4, 2, 2), -1);
    EXPECT_EQ(log_normal_degree(0, 2, 4, 2, 1), -1);
    EXPECT_EQ(log_normal_degree(1, 0, 3, 2, 17), 0);
    std::mt19937_64 rng(32);
    for (int n = 0; n < 1000; ++n) {
        long g = std::abs(uniform_symmetric(rng, 40)), i = std::abs(uniform_symmetric(rng, 60)), d = 1 + std::abs(uniform_symmetric(rng, 10));
        long nn = 2 + std::abs(uniform_symmetric(rng, 5)), e = 1 + std::abs(uniform_symmetric(rng, 30));
        Rat expected = Rat(2) * g - 2 + i - (Rat(d) - Rat(nn) - 1) * e;
        EXPECT_EQ(Rat(log_normal_degree(g, i, d, nn, e)), expected);
    }
}

TEST(Chow, ArithmeticGenus)
{
    EXPECT_EQ(arithmetic_genus_plane(12), 55);
    EXPECT_LT(arithmetic_genus_plane(12), 3 * 24);
    EXPECT_EQ(arithmetic_genus_plane(1), 0);
    EXPECT_EQ(arithmetic_genus_plane(2), 0);
    EXPECT_EQ(arithmetic_genus_plane(4), 3);
    EXPECT_THROW(arithmetic_genus_plane(0), std::invalid_argument);
    // 1 - chi(O_C) from 0 -> O(-d) -> O -> O_C, with h^2(O(-d)) = h^0(O(d - 3))
    auto h0 = [](long k) { return k < 0 ? 0L : (k + 1) * (k + 2) / 2; };
    for (long d = 1; d < 200; ++d) EXPECT_EQ(arithmetic_genus_plane(d), h0(d - 3));
}

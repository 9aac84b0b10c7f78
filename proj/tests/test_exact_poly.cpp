#include "test_support.hpp"

#include <quartic/elimination.hpp>
#include <quartic/poly.hpp>
#include <quartic/upoly.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace quartic;
using quartic::testing::random_poly;
using quartic::testing::random_upoly;

namespace {

const Vars xyz = make_vars({"x", "y", "z"});

Poly P(const std::string& s, const Vars& v = xyz) { return Poly::parse(s, v); }

} // namespace

TEST(RingArith, Cancellation)
{
    EXPECT_EQ(P("x + y") + P("x - y"), P("2*x"));
    EXPECT_EQ(P("x + y") * P("x - y"), P("x^2 - y^2"));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        Poly p = random_poly(rng, xyz, 4, 9);
        EXPECT_TRUE((Poly(xyz) * p).is_zero());
    }
}

TEST(RingArith, ContextMismatch)
{
    const Vars other = make_vars({"x", "y"});
    EXPECT_THROW(P("x") + Poly::parse("x", other), ContextError);
    EXPECT_THROW(P("x") * Poly::parse("y", other), ContextError);
    // identical variable lists built separately are the same context
    const Vars again = make_vars({"x", "y", "z"});
    EXPECT_EQ(P("x") + Poly::parse("y", again), P("x + y"));
}

TEST(RingArith, AdditionIsExactlyInvertible)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Poly p = random_poly(rng, xyz, 5, 1000);
        Poly q = random_poly(rng, xyz, 5, 1000) * make_rat(1, 7 + i);
        EXPECT_EQ((p + q) - q, p);
    }
}

TEST(PartialDerivative, Examples)
{
    EXPECT_EQ(P("x^4 + y^4 + z^4").derivative("x"), P("4*x^3"));
    EXPECT_TRUE(P("x^4").derivative("y").is_zero());
    EXPECT_THROW(P("x").derivative("w"), ContextError);
    // f = x g + h(y, z): f_x = g + x g_x, and f_x restricted to x = 0 is g
    Poly g = P("2*x^3 + x*y*z - 3*y^3 + z^3"), h = P("y^4 - 5*y*z^3 + z^4");
    Poly f = P("x") * g + h;
    EXPECT_EQ(f.derivative("x"), g + P("x") * g.derivative("x"));
    EXPECT_EQ(f.derivative("x").substitute({{"x", P("0")}}), g.substitute({{"x", P("0")}}));
}

TEST(Resultant, Examples)
{
    const Vars xu = make_vars({"x", "u"});
    EXPECT_EQ(resultant(Poly::parse("x^2 - u", xu), Poly::parse("x - 1", xu), "x"), Poly::parse("1 - u", xu));
    const Vars xab = make_vars({"x", "a", "b"});
    Poly r = resultant(Poly::parse("x - a", xab), Poly::parse("x - b", xab), "x");
    EXPECT_TRUE(r == Poly::parse("b - a", xab) || r == Poly::parse("a - b", xab)) << r;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        Poly p = random_poly(rng, xu, 3, 5) + Poly::parse("x^3", xu);
        EXPECT_TRUE(resultant(p, p, "x").is_zero());
    }
    EXPECT_THROW(resultant(P("y"), P("x"), "x"), std::invalid_argument);
}

TEST(Resultant, AgreesWithSylvesterDeterminant)
{
    std::mt19937_64 rng(17);
    const Vars xs = make_vars({"x", "s"});
    const Vars xst = make_vars({"x", "s", "t"});
    for (int i = 0; i < 40; ++i) {
        const Vars& v = (i % 2) ? xs : xst;
        Poly p = random_poly(rng, v, 4, 6), q = random_poly(rng, v, 3, 6);
        if (p.degree(0) < 1 || q.degree(0) < 1) continue;
        Poly syl = sylvester_resultant(p, q, 0);
        EXPECT_EQ(resultant(p, q, 0), syl);
        EXPECT_EQ(resultant_prs(p, q, 0), syl);
    }
}

TEST(Resultant, Multiplicative)
{
    std::mt19937_64 rng(23);
    const Vars xs = make_vars({"x", "s"});
    for (int i = 0; i < 30; ++i) {
        Poly p = random_poly(rng, xs, 2, 5) + Poly::parse("x^2", xs);
        Poly q = random_poly(rng, xs, 2, 5) + Poly::parse("x", xs);
        Poly r = random_poly(rng, xs, 3, 5) + Poly::parse("x^3", xs);
        if (p.degree(0) < 1 || q.degree(0) < 1 || r.degree(0) < 1) continue;
        EXPECT_EQ(resultant(p * q, r, "x"), resultant(p, r, "x") * resultant(q, r, "x"));
    }
}

TEST(Resultant, UnivariateIntegerRoutesAgree)
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        UPoly a = random_upoly(rng, 1 + i % 6, 20), b = random_upoly(rng, 1 + (i / 6) % 5, 20);
        auto [ai, as] = to_primitive_int(a);
        auto [bi, bs] = to_primitive_int(b);
        EXPECT_EQ(resultant(ai, bi), sylvester_resultant(ai, degree(ai), bi, degree(bi)));
    }
}

TEST(Subresultant, FirstSubresultantCarriesTheCommonRoot)
{
    // (x-1)(x-2) and (x-1)(x-3): S1 is proportional to x - 1
    IntPoly a{Int(2), Int(-3), Int(1)}, b{Int(3), Int(-4), Int(1)};
    auto s1 = subresultant(a, 2, b, 2, 1);
    ASSERT_NE(s1[1], 0);
    EXPECT_EQ(s1[0], -s1[1]);
    EXPECT_EQ(subresultant(a, 2, b, 2, 0)[0], 0);
}

TEST(Subresultant, InterpolatedChainMatchesPointwise)
{
    const Vars ts = make_vars({"t", "s"});
    Poly p = Poly::parse("t^3 + s*t^2 - 2*t + s^2 + 1", ts);
    Poly q = Poly::parse("t^2 - s*t + 3*s - 4", ts);
    auto e = eliminate(p, q, 0, 1, true);
    ASSERT_TRUE(e.has_s1);
    EXPECT_EQ(Poly::from_upoly(ts, "s", e.resultant), sylvester_resultant(p, q, 0));
    for (long s0 : {-7L, 3L, 12L}) {
        auto sp = p.specialize(1, Rat(s0)).to_upoly(0), sq = q.specialize(1, Rat(s0)).to_upoly(0);
        IntPoly a, b;
        for (auto& c : sp.coeffs()) a.push_back(c.get_num());
        for (auto& c : sq.coeffs()) b.push_back(c.get_num());
        auto s1 = subresultant(a, 3, b, 2, 1);
        EXPECT_EQ(e.s1_linear(Rat(s0)), Rat(s1[1]));
        EXPECT_EQ(e.s1_constant(Rat(s0)), Rat(s1[0]));
    }
}

TEST(Discriminant, Examples)
{
    const Vars xbc = make_vars({"x", "b", "c"});
    EXPECT_EQ(discriminant(Poly::parse("x^2 + b*x + c", xbc), "x"), Poly::parse("b^2 - 4*c", xbc));
    EXPECT_TRUE(discriminant(P("x^2 - 2*x + 1"), "x").is_zero());
    EXPECT_THROW(discriminant(P("x + y"), "x"), std::invalid_argument);
    const Vars xpqr = make_vars({"x", "p", "q", "r"});
    Poly quartic = Poly::parse("x^4 + p*x^2 + q*x + r", xpqr);
    Poly classical = Poly::parse(
        "16*p^4*r - 4*p^3*q^2 - 128*p^2*r^2 + 144*p*q^2*r - 27*q^4 + 256*r^3", xpqr);
    EXPECT_EQ(discriminant(quartic, "x"), classical);
}

TEST(Discriminant, VanishesExactlyWhenSquarefreePartDrops)
{
    std::mt19937_64 rng(31);
    const Vars x = make_vars({"x"});
    for (int i = 0; i < 60; ++i) {
        UPoly a = random_upoly(rng, 1 + i % 3, 4), b = random_upoly(rng, 1 + i % 2, 4);
        UPoly f = (i % 3 == 0) ? a * a * b : a * b;
        if (f.degree() < 2) continue;
        Poly pf = Poly::from_upoly(x, "x", f);
        bool disc_zero = discriminant(pf, "x").is_zero();
        bool drops = squarefree_part(pf, "x").degree(0) < f.degree();
        EXPECT_EQ(disc_zero, drops) << f;
    }
}

TEST(SquarefreePart, Examples)
{
    const Vars x = make_vars({"x"});
    Poly f = Poly::parse("x^3 - 4*x^2 + 5*x - 2", x); // (x-1)^2 (x-2)
    EXPECT_EQ(squarefree_part(f, "x"), Poly::parse("x^2 - 3*x + 2", x));
    Poly g = Poly::parse("6*x^2 - 18*x + 12", x);
    EXPECT_EQ(squarefree_part(g, "x"), Poly::parse("x^2 - 3*x + 2", x));
    EXPECT_EQ(squarefree_part(squarefree_part(g, "x"), "x"), squarefree_part(g, "x"));
}

TEST(SquarefreePart, BivariateAndMultiplicityChain)
{
    const Vars st = make_vars({"s", "t"});
    Poly a = Poly::parse("s^2 + t^2 - 1", st), b = Poly::parse("s - t^3 + 2", st), c = Poly::parse("s + 1", st);
    Poly f = a.pow(3) * b * b * c;
    Poly red = squarefree_part(f);
    EXPECT_EQ(red, (a * b * c).primitive());
    // c does not involve t, so it survives in gcd(f, f_t)
    EXPECT_EQ(gcd(f, f.derivative("t")), (a * a * b * c).primitive());
    EXPECT_EQ(divide_exact(f, gcd(f, f.derivative("t"))).primitive(), squarefree_part(f, "t"));
}

TEST(Gcd, Basic)
{
    const Vars st = make_vars({"s", "t"});
    Poly a = Poly::parse("s*t + 1", st), b = Poly::parse("s^2 - t", st), c = Poly::parse("t^2 + s + 3", st);
    EXPECT_EQ(gcd(a * b, a * c), a.primitive());
    EXPECT_EQ(gcd(b, c), Poly(st, Rat(1)));
}

TEST(Substitute, RestrictionToPencil)
{
    const Vars xst = make_vars({"x", "s", "t"});
    Poly F = P("x^4 + 2*x^3*y - y^4 + 3*x*y*z^2 + z^4 - 5*y^2*z^2");
    Poly restricted = F.substitute({{"x", Poly::parse("x", xst)},
                                    {"y", Poly::parse("s*x + t", xst)},
                                    {"z", Poly::parse("1", xst)}});
    EXPECT_EQ(restricted.degree("x"), 4);
    // spot check at a rational point
    for (long s0 = -2; s0 <= 2; ++s0)
        for (long t0 = -2; t0 <= 2; ++t0) {
            Rat x0 = make_rat(3, 5);
            EXPECT_EQ(restricted({x0, Rat(s0), Rat(t0)}), F({x0, Rat(s0) * x0 + Rat(t0), Rat(1)}));
        }
    EXPECT_EQ(F.substitute({{"x", P("x")}}), F);
    Poly g = P("x^2 + y*z"), h = P("y^3*z - z^4");
    EXPECT_EQ((P("x") * g + h).substitute({{"x", P("0")}}), h);
}

TEST(TextFormat, RoundTrip)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        Poly p = random_poly(rng, xyz, 5, 50) * make_rat(1, 1 + i % 9);
        Poly back = Poly::parse(p.to_string(), xyz);
        EXPECT_EQ(back, p);
        EXPECT_EQ(back.to_string(), p.to_string());
    }
    EXPECT_EQ(P("3/6*x^2*y - z + 1").to_string(), "1/2*x^2*y - z + 1");
    EXPECT_EQ(P("0").to_string(), "0");
}

TEST(TextFormat, Errors)
{
    EXPECT_THROW(P("x +"), ParseError);
    EXPECT_THROW(P("w^2"), ParseError);
    EXPECT_THROW(P("1/0*x"), ParseError);
    EXPECT_THROW(P("x y"), ParseError);
    EXPECT_THROW(P(""), ParseError);
}

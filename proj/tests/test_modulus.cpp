#include <quartic/modulus.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace quartic;

namespace {

Poly P(const std::string& s) { return Poly::parse(s, xyz_vars()); }

// prod (x - r y) over the roots
BinaryQuartic<Rat> from_roots(const std::array<Rat, 4>& r)
{
    std::vector<Rat> c{Rat(1)};
    for (const auto& root : r) {
        std::vector<Rat> n(c.size() + 1, Rat(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i] += c[i];
            n[i + 1] -= c[i] * root;
        }
        c = n;
    }
    return {c[0], c[1], c[2], c[3], c[4]};
}

// f(a x + b y, c x + d y)
BinaryQuartic<Rat> reparametrize(const BinaryQuartic<Rat>& f, const Rat& a, const Rat& b, const Rat& c, const Rat& d)
{
    static const Vars xy = make_vars({"x", "y"});
    Poly X = Poly::variable(xy, "x"), Y = Poly::variable(xy, "y");
    Poly u = X * a + Y * b, v = X * c + Y * d;
    Poly r(xy);
    for (int i = 0; i <= 4; ++i) r += u.pow(static_cast<unsigned>(4 - i)) * v.pow(static_cast<unsigned>(i)) * f[static_cast<std::size_t>(i)];
    BinaryQuartic<Rat> out;
    for (int k = 0; k <= 4; ++k) out[static_cast<std::size_t>(k)] = detail::coefficient(r, {4 - k, k});
    return out;
}

Rat small(std::mt19937_64& rng, long h = 9) { return Rat(uniform_symmetric(rng, h)); }

// y G + (restriction to y = 0), smooth for the chosen cubic
PlaneQuartic with_line_restriction(const std::string& on_line, std::mt19937_64& rng)
{
    for (;;) {
        Poly G(xyz_vars());
        for (const auto& e : std::vector<Exponent>{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1}, {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}})
            G += Poly::monomial(xyz_vars(), small(rng, 5), e);
        try {
            return PlaneQuartic::from_form(P("y") * G + P(on_line));
        } catch (const SingularQuartic&) {
        }
    }
}

Mat3 random_unimodular(std::mt19937_64& rng)
{
    for (;;) {
        Mat3 g;
        for (auto& row : g)
            for (auto& c : row) c = small(rng, 3);
        if (det(g) != 0) return g;
    }
}

RatLine pull_line(const RatLine& l, const Mat3& g)
{
    RatLine r;
    for (int j = 0; j < 3; ++j) {
        r[j] = 0;
        for (int i = 0; i < 3; ++i) r[j] += l[i] * g[i][j];
    }
    return r;
}

RatPoint push_point(const Mat3& ginv, const RatPoint& p)
{
    RatPoint r;
    for (int i = 0; i < 3; ++i) {
        r[i] = 0;
        for (int k = 0; k < 3; ++k) r[i] += ginv[i][k] * p[k];
    }
    return r;
}

} // namespace

TEST(CrossRatio, FormulaAndDegenerations)
{
    auto c = cross_ratio(0, 1, 2, 4);
    ASSERT_TRUE(c.value);
    EXPECT_EQ(*c.value, make_rat(1, 3));
    EXPECT_FALSE(c.degenerate);
    EXPECT_TRUE(cross_ratio(0, 0, 2, 4).degenerate);
    EXPECT_TRUE(cross_ratio(0, 1, 1, 4).degenerate);
    EXPECT_TRUE(cross_ratio(0, 1, 2, 0).degenerate);
    // infinity as the last point: (p1 - p2) / (p1 - p3)
    auto inf = cross_ratio({P1Point{Rat(0), Rat(1)}, P1Point{Rat(1), Rat(1)}, P1Point{Rat(2), Rat(1)}, P1Point{Rat(1), Rat(0)}});
    EXPECT_EQ(*inf.value, make_rat(1, 2));
}

TEST(CrossRatio, ProjectiveInvariance)
{
    std::mt19937_64 rng(11);
    for (int n = 0; n < 200; ++n) {
        std::array<P1Point, 4> p;
        for (auto& q : p) q = {small(rng), small(rng) == 0 ? Rat(0) : Rat(1)};
        if (std::any_of(p.begin(), p.end(), [](const P1Point& q) { return q[0] == 0 && q[1] == 0; })) continue;
        auto before = cross_ratio(p);
        Rat a = small(rng), b = small(rng), c = small(rng), d = small(rng);
        if (a * d - b * c == 0) continue;
        std::array<P1Point, 4> t;
        for (int i = 0; i < 4; ++i) t[i] = {a * p[i][0] + b * p[i][1], c * p[i][0] + d * p[i][1]};
        auto after = cross_ratio(t);
        EXPECT_EQ(before.degenerate, after.degenerate);
        EXPECT_EQ(before.value, after.value);
    }
}

TEST(JInvariant, SpecialValues)
{
    EXPECT_EQ(j_from_lambda(Rat(2)), 1728);
    EXPECT_EQ(j_from_lambda(Rat(-1)), 1728);
    EXPECT_EQ(j_from_lambda(make_rat(1, 2)), 1728);
    EXPECT_THROW(j_from_lambda(Rat(0)), UndefinedLocus);
    EXPECT_THROW(j_from_lambda(Rat(1)), UndefinedLocus);
    // -e^(2 pi i / 3) is a root of l^2 - l + 1
    auto mod = std::make_shared<const UPoly>(UPoly{Rat(1), Rat(-1), Rat(1)});
    NF l = NF::generator(mod);
    auto [num, den] = j_fraction(l, NF(mod, Rat(1)));
    EXPECT_TRUE(num.is_literally_zero());
    EXPECT_TRUE(den.is_unit());
}

TEST(JInvariant, ConstantOnOrbits)
{
    std::mt19937_64 rng(12);
    for (int n = 0; n < 200; ++n) {
        Rat l = make_rat(uniform_symmetric(rng, 50), 1 + std::abs(uniform_symmetric(rng, 50)));
        if (l == 0 || l == 1) continue;
        Rat j = j_from_lambda(l);
        for (const Rat& m : s4_orbit(l)) EXPECT_EQ(j_from_lambda(m), j);
    }
    std::vector<Rat> third{make_rat(-2), make_rat(-1, 2), make_rat(1, 3), make_rat(2, 3), make_rat(3, 2), make_rat(3)};
    EXPECT_EQ(s4_orbit(make_rat(1, 3)), third);
    EXPECT_EQ(s4_orbit(Rat(-1)), (std::vector<Rat>{Rat(-1), make_rat(1, 2), Rat(2)}));
}

TEST(JInvariant, BinaryQuarticMatchesCrossRatio)
{
    EXPECT_EQ(j_from_binary_quartic(from_roots({Rat(0), Rat(1), Rat(2), Rat(4)})), j_from_lambda(make_rat(1, 3)));
    EXPECT_EQ(j_from_binary_quartic({Rat(1), Rat(0), Rat(0), Rat(0), Rat(-1)}), 1728);
    // roots 1, -1, i, -i have cross-ratio 2, computed in Q(i)
    auto mod = std::make_shared<const UPoly>(UPoly{Rat(1), Rat(0), Rat(1)});
    NF i = NF::generator(mod), one(mod, Rat(1));
    NF lam = (one - (-one)) * (i - (-i)) * ((one - i) * (-one - (-i))).inverse();
    EXPECT_EQ(lam.value(), UPoly::constant(2));
    EXPECT_THROW(j_from_binary_quartic(from_roots({Rat(0), Rat(1), Rat(1), Rat(4)})), UndefinedLocus);

    std::mt19937_64 rng(13);
    for (int n = 0; n < 60; ++n) {
        std::array<Rat, 4> r{small(rng, 20), small(rng, 20), small(rng, 20), small(rng, 20)};
        std::sort(r.begin(), r.end());
        if (std::adjacent_find(r.begin(), r.end()) != r.end()) continue;
        EXPECT_EQ(j_from_binary_quartic(from_roots(r)), j_from_lambda(*cross_ratio(r[0], r[1], r[2], r[3]).value));
    }
}

TEST(JInvariant, InvariantUnderReparametrization)
{
    std::mt19937_64 rng(14);
    for (int n = 0; n < 50; ++n) {
        BinaryQuartic<Rat> f{small(rng), small(rng), small(rng), small(rng), small(rng)};
        if (binary_discriminant(f) == 0) continue;
        Rat a = small(rng), b = small(rng), c = small(rng), d = small(rng);
        if (a * d - b * c == 0) continue;
        EXPECT_EQ(j_from_binary_quartic(reparametrize(f, a, b, c, d)), j_from_binary_quartic(f));
    }
}

TEST(JInvariant, AgreesWithRootBoxes)
{
    std::mt19937_64 rng(15);
    const Rat tiny = Rat(1) / Rat(Int(1) << 64);
    int checked = 0;
    while (checked < 25) {
        BinaryQuartic<Rat> f{small(rng), small(rng), small(rng), small(rng), small(rng)};
        if (f[0] == 0 || binary_discriminant(f) == 0) continue;
        ComplexBox box = j_from_roots(f);
        EXPECT_LE(box.width(), tiny);
        EXPECT_TRUE(box.contains(j_from_binary_quartic(f), Rat(0)));
        ++checked;
    }
    // three finite roots and one at infinity
    BinaryQuartic<Rat> g{Rat(0), Rat(1), Rat(-2), Rat(3), Rat(5)};
    EXPECT_TRUE(j_from_roots(g).contains(j_from_binary_quartic(g), Rat(0)));
}

TEST(ABPoint, RoundTrip)
{
    EXPECT_EQ(ab_from_j(Rat(1728)).b, 0);
    EXPECT_NE(ab_from_j(Rat(1728)).a, 0);
    EXPECT_EQ(ab_from_j(Rat(0)).a, 0);
    EXPECT_NE(ab_from_j(Rat(0)).b, 0);
    std::mt19937_64 rng(16);
    for (int n = 0; n < 100; ++n) {
        Rat j0 = make_rat(uniform_symmetric(rng, 5000), 1 + std::abs(uniform_symmetric(rng, 30)));
        ABPoint p = ab_from_j(j0);
        EXPECT_EQ(j_of_cubic(p), j0);
        Rat m = small(rng) + 20;
        EXPECT_EQ((ABPoint{p.a * m * m, p.b * m * m * m}), p);
    }
    for (Rat j0 : {Rat(0), Rat(1728), Rat(-3375), make_rat(8000)}) {
        ABPoint p = ab_from_j(j0);
        BinaryQuartic<Rat> cubic{Rat(0), Rat(1), Rat(0), p.a, p.b};
        EXPECT_TRUE(j_from_roots(cubic).contains(j0, Rat(0)));
    }
    EXPECT_FALSE((ABPoint{Rat(1), Rat(0)}) == (ABPoint{Rat(0), Rat(1)}));
}

TEST(Gamma, MatchesOracleAndIsProjectivelyInvariant)
{
    std::mt19937_64 rng(17);
    PlaneQuartic q = PlaneQuartic::random(rng);
    int checked = 0;
    while (checked < 20) {
        RatLine l{small(rng), small(rng), small(rng)};
        if (l[0] == 0 && l[1] == 0 && l[2] == 0) continue;
        BinaryQuartic<Rat> f = restrict_to_line(q.form(), l);
        if (f[0] == 0) continue;
        Rat j = gamma(l, q);
        EXPECT_TRUE(j_from_roots(f).contains(j, Rat(0)));
        Mat3 g = random_unimodular(rng);
        PlaneQuartic moved = PlaneQuartic::from_form(transform(q.form(), g));
        EXPECT_EQ(gamma(pull_line(l, g), moved), j);
        ++checked;
    }
}

TEST(Gamma, UndefinedAtFlexAndBoundaryAtTangents)
{
    std::mt19937_64 rng(18);
    RatLine y0{Rat(0), Rat(1), Rat(0)};
    try {
        gamma(y0, with_line_restriction("x^3*z + x^4", rng));
        ADD_FAILURE() << "flex line accepted";
    } catch (const UndefinedLocus& e) {
        EXPECT_EQ(e.cause(), UndefinedLocus::Cause::Flex);
    }
    try {
        gamma(y0, with_line_restriction("x^4 - 2*x^2*z^2 + z^4", rng));
        ADD_FAILURE() << "bitangent accepted";
    } catch (const UndefinedLocus& e) {
        EXPECT_EQ(e.cause(), UndefinedLocus::Cause::Boundary);
    }
    try {
        gamma(y0, with_line_restriction("x^4 + x^3*z - 2*x^2*z^2", rng));
        ADD_FAILURE() << "tangent accepted";
    } catch (const UndefinedLocus& e) {
        EXPECT_EQ(e.cause(), UndefinedLocus::Cause::Boundary);
    }
}

TEST(PointedModulus, DefinedOffTangency)
{
    std::mt19937_64 rng(19);
    PlaneQuartic q = with_line_restriction("x^4 + x^3*z - 2*x^2*z^2", rng);
    RatLine y0{Rat(0), Rat(1), Rat(0)};
    // tangency point (0 : 0 : 1)
    try {
        phi({Rat(0), Rat(0), Rat(1)}, y0, q);
        ADD_FAILURE() << "tangency point accepted";
    } catch (const UndefinedLocus& e) {
        EXPECT_EQ(e.cause(), UndefinedLocus::Cause::TangencyPoint);
    }
    auto m = phi({Rat(3), Rat(0), Rat(1)}, y0, q);
    EXPECT_FALSE(m.j);
    EXPECT_TRUE(m.mu);
    // a simple intersection point is allowed, with mu at infinity
    auto at_root = phi({Rat(1), Rat(0), Rat(1)}, y0, q);
    EXPECT_FALSE(at_root.mu);
    EXPECT_THROW(phi({Rat(1), Rat(1), Rat(1)}, y0, q), std::invalid_argument);
    try {
        phi({Rat(1), Rat(0), Rat(1)}, y0, with_line_restriction("x^3*z + x^4", rng));
        ADD_FAILURE() << "flex line accepted";
    } catch (const UndefinedLocus& e) {
        EXPECT_EQ(e.cause(), UndefinedLocus::Cause::Flex);
    }
}

TEST(PointedModulus, ProjectivelyInvariantAndSeparating)
{
    std::mt19937_64 rng(20);
    PlaneQuartic q = PlaneQuartic::random(rng);
    int checked = 0;
    while (checked < 20) {
        RatLine l{small(rng), small(rng), small(rng)};
        if (l[0] == 0 && l[1] == 0 && l[2] == 0) continue;
        auto basis = line_basis(l);
        Rat u = small(rng), v = small(rng);
        if (u == 0 && v == 0) continue;
        RatPoint p;
        for (int i = 0; i < 3; ++i) p[i] = u * basis[0][i] + v * basis[1][i];
        PointedModulus m = phi(p, l, q);
        Mat3 g = random_unimodular(rng);
        PlaneQuartic moved = PlaneQuartic::from_form(transform(q.form(), g));
        EXPECT_EQ(phi(push_point(inverse(g), p), pull_line(l, g), moved), m);
        // another point on the same line almost never has the same invariant
        RatPoint p2;
        for (int i = 0; i < 3; ++i) p2[i] = (u + 1) * basis[0][i] + (2 * v - 1) * basis[1][i];
        if (p2 != RatPoint{Rat(0), Rat(0), Rat(0)}) EXPECT_NE(phi(p2, l, q).mu, m.mu);
        ++checked;
    }
}

TEST(PointedModulus, SpecialModuliUseTheirOwnInvariant)
{
    // x^4 - z^4 on y = 0 has J = 0; x^4 - x z^3 on y = 0 has I = 0
    std::mt19937_64 rng(21);
    RatLine y0{Rat(0), Rat(1), Rat(0)};
    auto harmonic = phi({Rat(2), Rat(0), Rat(3)}, y0, with_line_restriction("x^4 - z^4", rng));
    EXPECT_EQ(harmonic.kind, 2);
    EXPECT_EQ(harmonic.j, Rat(1728));
    auto equianharmonic = phi({Rat(2), Rat(0), Rat(3)}, y0, with_line_restriction("x^4 - x*z^3", rng));
    EXPECT_EQ(equianharmonic.kind, 3);
    EXPECT_EQ(equianharmonic.j, Rat(0));
}

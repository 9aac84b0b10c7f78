#include <quartic/quartic.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace quartic;

namespace {

Poly P(const std::string& s) { return Poly::parse(s, xyz_vars()); }

} // namespace

TEST(Smoothness, FermatIsSmooth)
{
    auto q = PlaneQuartic::fermat();
    EXPECT_TRUE(verify_certificate(q.form(), q.certificate()));
    EXPECT_NE(q.certificate().affine_witness, 0);
}

TEST(Smoothness, SingularExamples)
{
    EXPECT_THROW(assert_smooth(P("x^4")), SingularQuartic);
    // nodal at [0:0:1]: z^2 (x^2 - y^2) + x^4 + y^4
    EXPECT_THROW(assert_smooth(P("x^2*z^2 - y^2*z^2 + x^4 + y^4")), SingularQuartic);
    // product of two conics
    Poly c1 = P("x^2 + y^2 - z^2"), c2 = P("x^2 + 2*y^2 - 3*z^2");
    EXPECT_THROW(assert_smooth(c1 * c2), SingularQuartic);
    // cusp at a point not on any coordinate line after translation
    Poly cusp = transform(P("y^2*z^2 - x^3*z + x^4 + y^4"), chart_transform(3));
    EXPECT_THROW(assert_smooth(cusp), SingularQuartic);
}

TEST(Smoothness, RandomQuarticsCertifyAndReverify)
{
    std::mt19937_64 rng(2024);
    int smooth = 0;
    for (int i = 0; i < 12; ++i) {
        std::array<Rat, 15> c;
        for (auto& v : c) v = uniform_symmetric(rng, 10);
        try {
            PlaneQuartic q(c);
            ++smooth;
            EXPECT_TRUE(verify_certificate(q.form(), q.certificate()));
            // a tampered witness is rejected
            auto bad = q.certificate();
            bad.affine_witness += 1;
            EXPECT_FALSE(verify_certificate(q.form(), bad));
        } catch (const SingularQuartic&) {
        }
    }
    EXPECT_GE(smooth, 11);
}

TEST(Hessian, FermatIsDiagonal)
{
    // second partials 12x^2, 12y^2, 12z^2
    EXPECT_EQ(hessian(PlaneQuartic::fermat()), P("1728*x^2*y^2*z^2"));
}

TEST(Hessian, HomogeneousOfDegreeSix)
{
    std::mt19937_64 rng(8);
    auto q = PlaneQuartic::random(rng);
    Poly h = hessian(q);
    EXPECT_TRUE(h.is_homogeneous());
    EXPECT_EQ(h.total_degree(), 6);
}

TEST(Hessian, CovariantUnderLinearChange)
{
    std::mt19937_64 rng(9);
    auto q = PlaneQuartic::random(rng);
    Mat3 g{{{Rat(2), Rat(1), Rat(0)}, {Rat(-1), Rat(3), Rat(1)}, {Rat(1), Rat(0), make_rat(1, 2)}}};
    Rat d = det(g);
    EXPECT_EQ(hessian(transform(q.form(), g)), transform(hessian(q.form()), g) * (d * d));
}

TEST(TangentLine, PassesThroughPointWithContact)
{
    // x^4 + y^4 - 2 z^4 contains (1 : 1 : 1)
    auto q = PlaneQuartic::from_form(P("x^4 + y^4 - 2*z^4"));
    RatPoint p{Rat(1), Rat(1), Rat(1)};
    RatLine l = tangent_line(q, p);
    EXPECT_EQ(l[0] * p[0] + l[1] * p[1] + l[2] * p[2], 0);
    auto prof = contact_profile(l, q);
    EXPECT_GE(prof.front(), 2);
    EXPECT_THROW(tangent_line(q, {Rat(1), Rat(0), Rat(0)}), std::invalid_argument);
}

TEST(ContactProfile, Examples)
{
    auto f = PlaneQuartic::fermat();
    // x = 0 meets y^4 + z^4 = 0 in four simple points
    EXPECT_EQ(contact_profile({Rat(1), Rat(0), Rat(0)}, f), (std::vector<int>{1, 1, 1, 1}));
    // x = -y: 2y^4 + z^4
    EXPECT_EQ(contact_profile({Rat(1), Rat(1), Rat(0)}, f), (std::vector<int>{1, 1, 1, 1}));
    auto h = PlaneQuartic::from_form(P("x^4 + y^3*z + z^4 + x*y*z^2"));
    // z = 0 meets it in x^4 = 0
    EXPECT_EQ(contact_profile({Rat(0), Rat(0), Rat(1)}, h), (std::vector<int>{4}));
    std::mt19937_64 rng(77);
    auto q = PlaneQuartic::random(rng);
    for (int i = 0; i < 20; ++i) {
        RatLine l{Rat(uniform_symmetric(rng, 50)), Rat(uniform_symmetric(rng, 50)), Rat(1)};
        auto p = contact_profile(l, q);
        int sum = 0;
        for (int k : p) sum += k;
        EXPECT_EQ(sum, 4);
        EXPECT_EQ(p, (std::vector<int>{1, 1, 1, 1}));
    }
}

TEST(QuarticFormat, RoundTripAndErrors)
{
    std::mt19937_64 rng(4);
    auto q = PlaneQuartic::random(rng);
    auto back = PlaneQuartic::parse(q.serialize());
    EXPECT_EQ(back.form(), q.form());
    EXPECT_THROW(PlaneQuartic::parse("quartic-v2 1 2 3"), ParseError);
    EXPECT_THROW(PlaneQuartic::parse("quartic-v1 1 0 0"), ParseError);
    EXPECT_THROW(PlaneQuartic::parse("quartic-v1 1 0 0 0 0 0 0 0 0 0 1 0 0 0 1 9"), ParseError);
    EXPECT_THROW(PlaneQuartic::parse("quartic-v1 1 0 0 0 0 0 0 0 0 0 1 0 0 0 x"), ParseError);
    auto f = PlaneQuartic::parse("quartic-v1\n1 0 0 0 0\n0 0 0 0 0\n1 0 0 0 1\n");
    EXPECT_EQ(f.form(), P("x^4 + y^4 + z^4"));
    EXPECT_THROW(PlaneQuartic::parse("quartic-v1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0"), SingularQuartic);
}

TEST(Charts, UnimodularAndDeterministic)
{
    for (int k = 0; k < 20; ++k) {
        Mat3 g = chart_transform(k);
        EXPECT_EQ(det(g), 1);
        EXPECT_EQ(g, chart_transform(k));
        EXPECT_EQ(g * inverse(g), identity3());
    }
}

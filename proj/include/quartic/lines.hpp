#pragma once

// Special lines of a smooth plane quartic: flexes, bitangents and the dual
// curve. Everything is computed in a chart (a fixed linear change of
// coordinates) where lines are y = s x + t z, so a line is a point (s, t).
// Families of conjugate lines are stored as a square-free slope polynomial
// U(s) together with t = T(s) mod U.
//
// A chart is rejected (ChartDegenerate) when some generic position
// condition fails there, and the computation restarts in the next chart.

#include "binary_quartic.hpp"
#include "elimination.hpp"
#include "numberfield.hpp"
#include "quartic.hpp"
#include "roots.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quartic {

struct LineFamily {
    UPoly slope;     // square-free; one line per root s
    UPoly intercept; // t = T(s) modulo slope
    Profile profile = Profile::Simple;
    int size() const { return slope.degree(); }
};

struct FlexFamily {
    LineFamily lines;
    UPoly point_x, point_y; // flex point (X(s) : Y(s) : 1) in the chart
    int multiplicity = 1;   // intersection multiplicity of the quartic with its Hessian
};

struct FlexData {
    UPoly eliminant; // res_y(F, Hessian) at z = 1
    std::vector<FlexFamily> families;
    UPoly slopes; // product of the family slope polynomials
    int total_multiplicity() const
    {
        int n = 0;
        for (const auto& f : families) n += f.multiplicity * f.lines.size();
        return n;
    }
    int distinct() const { return slopes.degree(); }
    int hyperflexes() const
    {
        int n = 0;
        for (const auto& f : families)
            if (f.lines.profile == Profile::Hyperflex) n += f.lines.size();
        return n;
    }
};

struct DualCurveData {
    Poly discriminant; // of the restriction F(X, sX + t, 1), in (s, t)
    Poly chart_curve;  // its square-free part
    Poly form;         // homogeneous in the dual coordinates (a, b, c), original frame
    int raw_degree = 0;
};

struct BitangentData {
    UPoly raw;        // res_t of the two perfect-square conditions
    UPoly candidates; // square-free, with slopes of lines through points at z = 0 removed
    std::vector<LineFamily> families; // certified {2,2} and {4} lines
    UPoly proper;          // slopes of the {2,2} lines
    UPoly hyperflex_lines; // slopes of the {4} lines
    int spurious_degree = 0;
    UPoly dual_singular; // square-free gcd of res_t(D, D_t), res_t(D, D_s)
    UPoly from_dual;     // dual_singular without the flex lines
    bool agree = false;
    int count() const { return proper.degree(); }
};

namespace detail {

inline NF eval_nf(const Poly& p, const std::vector<NF>& point, const std::shared_ptr<const UPoly>& mod)
{
    return p.evaluate_with(point, [&](const Rat& c) { return NF(mod, c); });
}

inline BinaryQuartic<NF> pencil_nf(const std::array<Poly, 5>& a, const NF& s, const NF& t)
{
    BinaryQuartic<NF> f;
    for (int k = 0; k <= 4; ++k) f[static_cast<std::size_t>(k)] = eval_nf(a[static_cast<std::size_t>(4 - k)], {s, t}, s.modulus());
    return f;
}

inline Profile classify_nf(const BinaryQuartic<NF>& f)
{
    return classify(f, [](const NF& v) { return v.is_zero(); });
}

inline UPoly product(const std::vector<UPoly>& v)
{
    UPoly r = UPoly::constant(1);
    for (const auto& p : v) r *= p;
    return r;
}

inline UPoly strip(const UPoly& p, const UPoly& q)
{
    if (q.degree() <= 0) return primitive(p);
    return primitive(p.exact_div(gcd(p, q)));
}

} // namespace detail

/// Homogenizes a polynomial in the chart coordinates (s, t) of the dual plane
/// (the line y = s x + t z, i.e. (s : -1 : t)) and moves it back to the
/// original frame through l' = l g. Returns a primitive form in (a, b, c).
inline Poly dual_plane_form(const Poly& chart_poly, const Mat3& g)
{
    const int d = chart_poly.total_degree();
    // b'^d P(-a'/b', -c'/b')
    Poly h(abc_vars());
    for (const auto& [e, c] : chart_poly.terms()) {
        Rat coef = ((e[0] + e[1]) % 2) ? Rat(-c) : c;
        h += Poly::monomial(abc_vars(), coef, {e[0], d - e[0] - e[1], e[1]});
    }
    std::map<std::string, Poly> sub;
    const char* names[3] = {"a", "b", "c"};
    for (int j = 0; j < 3; ++j) {
        Poly v(abc_vars());
        for (int i = 0; i < 3; ++i) v += Poly::variable(abc_vars(), names[i]) * g[i][j];
        sub.emplace(names[j], v);
    }
    return h.substitute(sub).primitive();
}

class QuarticGeometry {
public:
    explicit QuarticGeometry(PlaneQuartic q, int first_chart = 0, int max_charts = 24)
        : q_(std::move(q)), max_charts_(max_charts)
    {
        set_chart(first_chart);
    }

    const PlaneQuartic& quartic() const { return q_; }
    int chart_index() const { return chart_; }
    const Mat3& chart() const { return g_; }
    const Poly& chart_form() const { return Fc_; }
    const std::array<Poly, 5>& pencil() const { return pencil_; }

    FlexData flexes()
    {
        with_charts([&] { ensure_flexes(); });
        return *flex_;
    }

    DualCurveData dual()
    {
        with_charts([&] { ensure_dual(); });
        return *dual_;
    }

    BitangentData bitangents()
    {
        with_charts([&] {
            ensure_flexes();
            ensure_dual();
            ensure_bitangents();
        });
        return *bit_;
    }

    /// Chart line coordinates to the original frame: l = l' g^-1.
    std::array<Rat, 3> to_original(const std::array<Rat, 3>& l) const
    {
        std::array<Rat, 3> r;
        for (int j = 0; j < 3; ++j) {
            r[j] = 0;
            for (int i = 0; i < 3; ++i) r[j] += l[i] * ginv_[i][j];
        }
        return r;
    }

    /// Moves to the next chart and drops everything computed so far.
    void next_chart() { set_chart(chart_ + 1); }

    /// Runs f, switching charts whenever it reports a degenerate chart.
    template <class F>
    void with_charts(F f)
    {
        for (;;) {
            try {
                f();
                return;
            } catch (const ChartDegenerate& e) {
                if (chart_ + 1 >= max_charts_)
                    throw CertificationError(std::string("no usable chart: ") + e.what());
                next_chart();
            }
        }
    }

private:
    void set_chart(int k)
    {
        chart_ = k;
        g_ = chart_transform(k);
        ginv_ = inverse(g_);
        Fc_ = transform(q_.form(), g_);
        pencil_ = pencil_coefficients(Fc_);
        flex_.reset();
        dual_.reset();
        bit_.reset();
    }

    void ensure_flexes()
    {
        if (flex_) return;
        const Poly Hc = hessian(Fc_);
        if (detail::coefficient(Fc_, {0, 4, 0}) == 0) throw ChartDegenerate("[0:1:0] lies on the quartic");
        if (detail::coefficient(Hc, {0, 6, 0}) == 0) throw ChartDegenerate("[0:1:0] lies on the Hessian");
        const Poly fa = detail::affine_part(Fc_), ha = detail::affine_part(Hc);
        auto e = eliminate(fa, ha, 1, 0, true);
        if (e.resultant.degree() != 24) throw ChartDegenerate("flex point on the line z = 0");
        const std::array<Poly, 3> grad{Fc_.derivative(0), Fc_.derivative(1), Fc_.derivative(2)};

        FlexData out;
        out.eliminant = e.resultant;
        std::vector<UPoly> slope_polys;
        for (const auto& [S, mult] : squarefree_decomposition(e.resultant)) {
            std::function<FlexFamily(const std::shared_ptr<const UPoly>&)> fn = [&](const std::shared_ptr<const UPoly>& mod) {
                NF x = NF::generator(mod), lin(mod, e.s1_linear), con(mod, e.s1_constant), one(mod, Rat(1));
                if (lin.is_zero()) throw ChartDegenerate("two flexes share an x-coordinate");
                NF y = -con * lin.inverse();
                if (!detail::eval_nf(fa, {x, y}, mod).is_literally_zero() || !detail::eval_nf(ha, {x, y}, mod).is_literally_zero())
                    throw CertificationError("flex point failed exact verification");
                NF a = detail::eval_nf(grad[0], {x, y, one}, mod), b = detail::eval_nf(grad[1], {x, y, one}, mod),
                   c = detail::eval_nf(grad[2], {x, y, one}, mod);
                if (b.is_zero()) throw ChartDegenerate("vertical flex line");
                NF binv = b.inverse();
                NF s = -a * binv, t = -c * binv;
                Profile prof = detail::classify_nf(detail::pencil_nf(pencil_, s, t));
                if (prof != Profile::Flex && prof != Profile::Hyperflex)
                    throw CertificationError("tangent at a flex point has profile " + profile_name(prof));
                auto pf = primitive_form(s, {t, x, y});
                if (!pf) throw ChartDegenerate("two flex lines share a slope");
                FlexFamily fam;
                fam.lines = {primitive(pf->minpoly), pf->images[0], prof};
                fam.point_x = pf->images[1];
                fam.point_y = pf->images[2];
                fam.multiplicity = mult;
                return fam;
            };
            for (auto& [factor, fam] : split_evaluate<FlexFamily>(S, fn)) {
                slope_polys.push_back(fam.lines.slope);
                out.families.push_back(std::move(fam));
            }
        }
        out.slopes = primitive(detail::product(slope_polys));
        if (squarefree_part(out.slopes).degree() != out.slopes.degree()) throw ChartDegenerate("flex lines share a slope");
        flex_ = std::move(out);
    }

    void ensure_dual()
    {
        if (dual_) return;
        DualCurveData out;
        BinaryQuartic<Poly> f{pencil_[4], pencil_[3], pencil_[2], pencil_[1], pencil_[0]};
        out.discriminant = binary_discriminant(f);
        out.raw_degree = out.discriminant.total_degree();
        out.chart_curve = squarefree_part_fast(out.discriminant);
        const int d = out.chart_curve.total_degree();
        // lines through [0:1:0] are missing from the chart; none of them may be
        // special, i.e. the top-degree binary form must be square-free of full degree
        {
            std::vector<Rat> top(static_cast<std::size_t>(d + 1), Rat(0));
            for (const auto& [e, c] : out.chart_curve.terms())
                if (e[0] + e[1] == d) top[static_cast<std::size_t>(e[1])] += c;
            UPoly u(top);
            if (u.degree() < d - 1 || squarefree_part(u).degree() != u.degree())
                throw ChartDegenerate("special line through [0:1:0]");
        }
        out.form = dual_plane_form(out.chart_curve, g_);
        dual_ = std::move(out);
    }

    void ensure_bitangents()
    {
        if (bit_) return;
        const auto& a = pencil_;
        // f / a4 = (X^2 + pX + q)^2
        Poly E1 = a[3] * a[3] * a[3] - a[2] * a[3] * a[4] * Rat(4) + a[1] * a[4] * a[4] * Rat(8);
        Poly sq = a[2] * a[4] * Rat(4) - a[3] * a[3];
        Poly E2 = a[0] * a[4] * a[4] * a[4] * Rat(64) - sq * sq;
        if (E1.degree(1) != 3 || E2.degree(1) != 4) throw ChartDegenerate("perfect-square conditions drop degree in t");
        auto e = eliminate(E2, E1, 1, 0, true);
        if (e.resultant.is_zero()) throw ChartDegenerate("perfect-square conditions share a component");

        BitangentData out;
        out.raw = e.resultant;
        UPoly a4 = a[4].to_upoly("s");
        // a bitangent tangent at a point (1 : s0 : 0) would be stripped with the
        // factors of a4; rule that out first
        if (a4.degree() > 0) {
            std::function<int(const std::shared_ptr<const UPoly>&)> at_inf = [&](const std::shared_ptr<const UPoly>& mod) {
                NF s0 = NF::generator(mod), one(mod, Rat(1)), zero(mod, Rat(0));
                std::vector<NF> pt{one, s0, zero};
                NF ga = detail::eval_nf(Fc_.derivative(0), pt, mod), gb = detail::eval_nf(Fc_.derivative(1), pt, mod),
                   gc = detail::eval_nf(Fc_.derivative(2), pt, mod);
                if (gb.is_zero()) return 0;
                NF binv = gb.inverse();
                Profile prof = detail::classify_nf(detail::pencil_nf(pencil_, -ga * binv, -gc * binv));
                return (prof == Profile::Bitangent || prof == Profile::Hyperflex) ? 1 : 0;
            };
            for (auto& [factor, bad] : split_evaluate<int>(squarefree_part(a4), at_inf))
                if (bad) throw ChartDegenerate("bitangent tangent at a point of z = 0");
        }
        out.candidates = detail::strip(squarefree_part(e.resultant), a4);

        std::function<std::optional<LineFamily>(const std::shared_ptr<const UPoly>&)> fn =
            [&](const std::shared_ptr<const UPoly>& mod) -> std::optional<LineFamily> {
            NF s = NF::generator(mod), lin(mod, e.s1_linear), con(mod, e.s1_constant);
            if (lin.is_zero()) throw ChartDegenerate("two bitangent candidates share a slope");
            NF t = -con * lin.inverse();
            Profile prof = detail::classify_nf(detail::pencil_nf(pencil_, s, t));
            if (prof != Profile::Bitangent && prof != Profile::Hyperflex) return std::nullopt;
            return LineFamily{*mod, t.value(), prof};
        };
        std::vector<UPoly> proper, hyper;
        for (auto& [factor, fam] : split_evaluate<std::optional<LineFamily>>(out.candidates, fn)) {
            if (!fam) {
                out.spurious_degree += factor.degree();
                continue;
            }
            (fam->profile == Profile::Bitangent ? proper : hyper).push_back(factor);
            out.families.push_back(std::move(*fam));
        }
        out.proper = primitive(detail::product(proper));
        out.hyperflex_lines = primitive(detail::product(hyper));

        // independent route: singular points of the dual curve
        const Poly& D = dual_->chart_curve;
        Poly Dt = D.derivative(1), Ds = D.derivative(0);
        if (D.degree(1) < 2 || Ds.degree(1) < 1) throw ChartDegenerate("dual curve degenerate in t");
        UPoly r1 = eliminate(D, Dt, 1, 0).resultant, r2 = eliminate(D, Ds, 1, 0).resultant;
        if (r1.is_zero() || r2.is_zero()) throw ChartDegenerate("dual curve eliminants vanish");
        out.dual_singular = squarefree_part(gcd(r1, r2));
        out.from_dual = detail::strip(out.dual_singular, flex_->slopes);
        UPoly all_special = primitive(detail::product({flex_->slopes, detail::strip(out.proper * out.hyperflex_lines, flex_->slopes)}));
        out.agree = out.from_dual == out.proper && out.dual_singular == all_special;
        if (!out.agree) throw ChartDegenerate("dual-curve singular slopes do not separate in this chart");
        bit_ = std::move(out);
    }

    PlaneQuartic q_;
    int max_charts_;
    int chart_ = 0;
    Mat3 g_, ginv_;
    Poly Fc_;
    std::array<Poly, 5> pencil_;
    std::optional<FlexData> flex_;
    std::optional<DualCurveData> dual_;
    std::optional<BitangentData> bit_;
};

// --- numeric views ----------------------------------------------------------

struct ApproxLine {
    std::complex<double> a, b, c; // original frame, largest coordinate scaled to 1
    ComplexBox slope;             // certified box for the chart slope
};

namespace detail {

inline GQ horner_gq(const UPoly& p, const GQ& z)
{
    GQ acc{Rat(0), Rat(0)};
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        acc = acc * z;
        acc.re += p.coeffs()[k];
    }
    return acc;
}

inline std::array<std::complex<double>, 3> normalize(const std::array<GQ, 3>& v)
{
    std::array<std::complex<double>, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = {v[i].re.get_d(), v[i].im.get_d()};
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(c[i]) > std::abs(c[k]) * (1 + 1e-12)) k = i;
    auto s = c[k];
    for (auto& x : c) x /= s;
    return c;
}

} // namespace detail

/// Lines of a family in the original frame, slopes refined to 2^-bits.
inline std::vector<ApproxLine> approximate(const LineFamily& fam, const Mat3& g, unsigned bits = 64)
{
    Mat3 ginv = inverse(g);
    std::vector<ApproxLine> out;
    for (const auto& cl : isolate_roots(fam.slope)) {
        RootCluster r = refine(cl, bits);
        detail::GQ s{r.box.center_re(), r.box.center_im()};
        detail::GQ t = detail::horner_gq(fam.intercept, s);
        std::array<detail::GQ, 3> chart{s, detail::GQ{Rat(-1), Rat(0)}, t};
        std::array<detail::GQ, 3> orig;
        for (int j = 0; j < 3; ++j) {
            orig[j] = {Rat(0), Rat(0)};
            for (int i = 0; i < 3; ++i) orig[j] = orig[j] + chart[i] * detail::GQ{ginv[i][j], Rat(0)};
        }
        auto c = detail::normalize(orig);
        out.push_back({c[0], c[1], c[2], r.box});
    }
    return out;
}

} // namespace quartic

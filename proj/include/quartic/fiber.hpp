#pragma once

// Curves of constant j in the dual plane. For a line (s : -1 : t) of the
// chart, j(s, t) = 6912 I^3 / (4 I^3 - J^2) with I, J the invariants of the
// restricted binary quartic, so the fiber over j0 is cut out by
//     j0 (4 I^3 - J^2) - 6912 I^3.
// At j0 = 1728 this is -1728 J^2, at j0 = 0 it is a multiple of I^3.

#include "lines.hpp"
#include "modulus.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

struct FiberCurve {
    Rat j;
    Poly raw;        // j (4 I^3 - J^2) - 6912 I^3 in the chart, primitive
    Poly equation;   // reduced support, chart coordinates (s, t)
    Poly form;       // homogeneous in (a, b, c), original frame
    int multiplicity = 1; // raw = c * equation^multiplicity
    int degree = 0;
    int chart = 0;
    std::vector<std::pair<Poly, int>> stripped_factors; // removed with a certificate; empty in practice
    bool coprime_to_dual = false;
    bool through_flex_lines = false;
};

namespace detail {

// No factor of positive degree in `var` is shared: p has constant content in
// var, and one specialization of the other variable keeps both degrees and
// gives coprime univariate polynomials.
inline bool proven_coprime(const Poly& p, const Poly& q, std::size_t var, std::size_t other, int tries = 12)
{
    UPoly content;
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        UPoly u = c.specialize(var, Rat(0)).to_upoly(other);
        content = content.is_zero() ? u : gcd(content, u);
    }
    if (content.degree() > 0) return false;
    for (int k = 0; k < tries; ++k) {
        Rat v(k % 2 ? (k + 1) / 2 + 2 : -(k / 2) - 4);
        UPoly a = p.specialize(other, v).to_upoly(var), b = q.specialize(other, v).to_upoly(var);
        if (a.degree() != p.degree(var) || b.degree() != q.degree(var)) continue;
        if (gcd(a, b).degree() == 0) return true;
    }
    return false;
}

inline std::pair<Poly, Poly> chart_invariants(const std::array<Poly, 5>& pencil)
{
    BinaryQuartic<Poly> f{pencil[4], pencil[3], pencil[2], pencil[1], pencil[0]};
    return {invariant_I(f), invariant_J(f)};
}

} // namespace detail

/// The fiber of the modulus map over j0, in the chart of G.
inline FiberCurve fiber_curve(QuarticGeometry& G, const Rat& j0)
{
    const FlexData flex = G.flexes();
    const DualCurveData dual = G.dual();
    const auto [I, J] = detail::chart_invariants(G.pencil());
    const std::size_t s_var = 0, t_var = 1;

    FiberCurve out;
    out.j = j0;
    out.chart = G.chart_index();
    Poly raw = (I * I * I * Rat(4) - J * J) * j0 - I * I * I * j_constant();
    if (raw.is_zero()) throw CertificationError("fiber_curve: the modulus map is constant");
    out.raw = raw.primitive();
    if (j0 == 1728) {
        out.equation = J.primitive();
        out.multiplicity = 2;
    } else if (j0 == 0) {
        out.equation = I.primitive();
        out.multiplicity = 3;
    } else {
        out.equation = out.raw;
    }
    const Poly power = out.equation.pow(static_cast<unsigned>(out.multiplicity));
    if (!(power == out.raw || power == -out.raw))
        throw std::logic_error("fiber_curve: support does not reproduce the eliminant");
    if (!proven_squarefree(out.equation, t_var)) {
        Poly r = squarefree_part(out.equation);
        if (r.total_degree() != out.equation.total_degree())
            throw CertificationError("fiber_curve: fiber support is not reduced; quartic is not general enough");
    }
    out.coprime_to_dual = detail::proven_coprime(out.equation, dual.chart_curve, t_var, s_var);
    if (!out.coprime_to_dual) throw CertificationError("fiber_curve: could not separate the fiber from the dual curve");
    out.degree = out.equation.total_degree();
    out.form = dual_plane_form(out.equation, G.chart());

    // I = J = 0 on every flex line, so each fiber passes through all of them
    out.through_flex_lines = true;
    for (const auto& fam : flex.families) {
        auto mod = std::make_shared<const UPoly>(fam.lines.slope);
        NF s = NF::generator(mod), t(mod, fam.lines.intercept);
        if (!detail::eval_nf(out.equation, {s, t}, mod).is_literally_zero()) out.through_flex_lines = false;
    }
    return out;
}

// --- local analysis at the flex lines ---------------------------------------

/// What the exact local computation at a point of the fiber found. All
/// lines of one family (the conjugate roots of `slope`) share the report.
struct CuspReport {
    UPoly slope; // the lines it applies to
    int lines = 0;
    int multiplicity = 0;          // order of the first non-vanishing Taylor term
    bool tangent_cone_square = false;
    bool cubic_along_cone = false; // third derivative along the tangent direction is a unit
    int generic_line_order = 0;    // contact with a generic line through the point
    std::vector<std::pair<int, int>> newton_vertices; // (i, k) for u^i w^k, u the cone form
    std::pair<int, int> weights{0, 0};

    bool is_cusp() const { return multiplicity == 2 && tangent_cone_square && cubic_along_cone; }
};

namespace detail {

struct Jet {
    NF value, ds, dt;
    NF dss, dst, dtt;
    NF dsss, dsst, dstt, dttt;
};

struct Derivatives {
    Poly f, s, t, ss, st, tt, sss, sst, stt, ttt;
    explicit Derivatives(const Poly& p)
        : f(p), s(p.derivative(0)), t(p.derivative(1)), ss(s.derivative(0)), st(s.derivative(1)), tt(t.derivative(1)),
          sss(ss.derivative(0)), sst(ss.derivative(1)), stt(st.derivative(1)), ttt(tt.derivative(1))
    {
    }
    Jet at(const NF& x, const NF& y, const std::shared_ptr<const UPoly>& mod) const
    {
        auto e = [&](const Poly& q) { return eval_nf(q, {x, y}, mod); };
        return {e(f), e(s), e(t), e(ss), e(st), e(tt), e(sss), e(sst), e(stt), e(ttt)};
    }
};

// kernel direction of the tangent cone (a, b; b, c) of rank one
inline std::array<NF, 2> cone_direction(const Jet& j)
{
    if (!j.dss.is_zero()) return {j.dst, -j.dss};
    return {NF(j.dss.modulus(), Rat(1)), NF(j.dss.modulus(), Rat(0))};
}

inline CuspReport analyze(const Jet& j, const UPoly& slope)
{
    CuspReport r;
    r.slope = slope;
    r.lines = slope.degree();
    if (!j.value.is_zero()) throw std::invalid_argument("cusp_analysis: the line is not on the fiber");
    if (!j.ds.is_zero() || !j.dt.is_zero()) {
        r.multiplicity = 1;
        r.generic_line_order = 1;
        return r;
    }
    const bool quadratic_zero = j.dss.is_zero() && j.dst.is_zero() && j.dtt.is_zero();
    if (quadratic_zero) {
        r.multiplicity = 3; // at least
        return r;
    }
    r.multiplicity = 2;
    r.generic_line_order = 2;
    r.tangent_cone_square = (j.dst * j.dst - j.dss * j.dtt).is_zero();
    if (!r.tangent_cone_square) return r;
    auto v = cone_direction(j);
    NF third = j.dsss * v[0] * v[0] * v[0] + j.dsst * v[0] * v[0] * v[1] * Rat(3) + j.dstt * v[0] * v[1] * v[1] * Rat(3) +
               j.dttt * v[1] * v[1] * v[1];
    r.cubic_along_cone = !third.is_zero();
    if (r.cubic_along_cone) {
        // u^2 from the cone, w^3 along it; nothing below the edge 3i + 2k = 6
        r.newton_vertices = {{2, 0}, {0, 3}};
        r.weights = {3, 2};
    }
    return r;
}

} // namespace detail

/// Local analysis of the fiber at each flex line of G (all 24, grouped by
/// conjugate families).
inline std::vector<CuspReport> cusp_analysis(const FiberCurve& C, QuarticGeometry& G)
{
    const FlexData flex = G.flexes();
    if (G.chart_index() != C.chart) throw std::invalid_argument("cusp_analysis: fiber and geometry use different charts");
    const detail::Derivatives d(C.equation);
    std::vector<CuspReport> out;
    for (const auto& fam : flex.families) {
        std::function<CuspReport(const std::shared_ptr<const UPoly>&)> fn = [&](const std::shared_ptr<const UPoly>& mod) {
            NF s = NF::generator(mod), t(mod, fam.lines.intercept);
            return detail::analyze(d.at(s, t, mod), *mod);
        };
        for (auto& [factor, rep] : split_evaluate<CuspReport>(fam.lines.slope, fn)) out.push_back(std::move(rep));
    }
    return out;
}

/// Exact local analysis at one rational point (s, t) of the chart.
inline CuspReport local_analysis(const FiberCurve& C, const Rat& s, const Rat& t)
{
    const detail::Derivatives d(C.equation);
    auto mod = std::make_shared<const UPoly>(UPoly{Rat(0), Rat(1)});
    return detail::analyze(d.at(NF(mod, s), NF(mod, t), mod), *mod);
}

/// Slopes over which the fiber can be singular: the square-free gcd of
/// res_t(C, C_t) and res_t(C, C_s).
inline UPoly singular_slopes(const FiberCurve& C)
{
    const Poly& f = C.equation;
    UPoly r1 = eliminate(f, f.derivative(1), 1, 0).resultant;
    UPoly r2 = eliminate(f, f.derivative(0), 1, 0).resultant;
    if (r1.is_zero() || r2.is_zero()) throw ChartDegenerate("fiber eliminants vanish");
    return squarefree_part(gcd(r1, r2));
}

// --- intersection of two fibers ---------------------------------------------

struct FlexIntersection {
    UPoly slope; // family of flex lines
    int lines = 0;
    int local_multiplicity = 0;
};

struct FiberIntersection {
    UPoly resultant; // res_t(C1, C2)
    int total = 0;   // its degree, the Bezout number when nothing escapes to infinity
    std::vector<FlexIntersection> per_flex;
    bool concentrated_at_flexes = false; // resultant = c * prod U^6
    bool certified = false;              // local lower bounds add up to the total
};

/// Intersection of two fibers at the flex lines. Each flex is a cusp of both
/// with the same tangent direction, so in weights (3, 2) both have weighted
/// order 6 there and the local intersection number is at least 6. When the
/// resultant has full degree deg C1 * deg C2 = 144, the lower bounds already
/// exhaust it: every local number is exactly 6 and there is no other
/// intersection.
inline FiberIntersection fiber_intersection_at_flexes(const FiberCurve& C1, const FiberCurve& C2, QuarticGeometry& G)
{
    if (C1.j == C2.j) throw std::invalid_argument("fiber_intersection_at_flexes: the two fibers coincide");
    if (C1.chart != C2.chart || C1.chart != G.chart_index())
        throw std::invalid_argument("fiber_intersection_at_flexes: charts differ");
    const FlexData flex = G.flexes();
    FiberIntersection out;
    out.resultant = eliminate(C1.equation, C2.equation, 1, 0).resultant;
    if (out.resultant.is_zero()) throw CertificationError("fibers share a component");
    out.total = out.resultant.degree();

    const detail::Derivatives d1(C1.equation), d2(C2.equation);
    int bound_sum = 0;
    bool bounds_hold = true;
    UPoly rest = out.resultant;
    for (const auto& fam : flex.families) {
        std::function<bool(const std::shared_ptr<const UPoly>&)> fn = [&](const std::shared_ptr<const UPoly>& mod) {
            NF s = NF::generator(mod), t(mod, fam.lines.intercept);
            auto j1 = d1.at(s, t, mod), j2 = d2.at(s, t, mod);
            if (!detail::analyze(j1, *mod).is_cusp() || !detail::analyze(j2, *mod).is_cusp()) return false;
            auto v1 = detail::cone_direction(j1), v2 = detail::cone_direction(j2);
            return (v1[0] * v2[1] - v1[1] * v2[0]).is_zero();
        };
        for (auto& [factor, ok] : split_evaluate<bool>(fam.lines.slope, fn)) {
            FlexIntersection fi;
            fi.slope = factor;
            fi.lines = factor.degree();
            // multiplicity of the slope polynomial in the resultant
            while (rest.degree() >= factor.degree()) {
                auto [q, r] = rest.divmod(factor);
                if (!r.is_zero()) break;
                rest = q;
                ++fi.local_multiplicity;
            }
            if (!ok) bounds_hold = false;
            bound_sum += 6 * fi.lines;
            out.per_flex.push_back(fi);
        }
    }
    out.concentrated_at_flexes = rest.degree() == 0;
    const int bezout = C1.degree * C2.degree;
    out.certified = bounds_hold && out.total == bezout && bound_sum == bezout;
    for (const auto& fi : out.per_flex)
        if (fi.local_multiplicity != 6) out.certified = false;
    return out;
}

} // namespace quartic

#pragma once

// The inequality 2g - 2 + i >= deg / 2 for curves in the plane against a
// quartic, checked on lines and conics: the lines violating it are exactly
// the bitangents and flex lines, and a conic meeting the quartic in three
// points attains equality.

#include "chow.hpp"
#include "fiber.hpp"
#include "lines.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace quartic {

// --- rational curves --------------------------------------------------------

/// (x, y, z) = (p0(u, v), p1(u, v), p2(u, v)), homogeneous of degree e.
struct RationalCurveMap {
    std::array<Poly, 3> param;
    int degree = 0;

    static const Vars& uv_vars()
    {
        static const Vars v = make_vars({"u", "v"});
        return v;
    }
    static RationalCurveMap line(const RatLine& l)
    {
        auto b = line_basis(l);
        Poly u = Poly::variable(uv_vars(), "u"), v = Poly::variable(uv_vars(), "v");
        RationalCurveMap m;
        for (int i = 0; i < 3; ++i) m.param[i] = u * b[0][i] + v * b[1][i];
        m.degree = 1;
        return m;
    }
};

/// F composed with the parametrization, as a univariate polynomial at v = 1
/// together with the degree of the binary form.
inline std::pair<UPoly, int> pull_back(const RationalCurveMap& c, const Poly& F)
{
    std::map<std::string, Poly> sub;
    for (std::size_t i = 0; i < 3; ++i) sub.emplace((*F.vars())[i], c.param[i]);
    Poly r = F.substitute(sub);
    if (r.is_zero()) throw std::invalid_argument("curve lies on the quartic");
    return {r.specialize(1, Rat(1)).to_upoly(0), F.total_degree() * c.degree};
}

/// Number of distinct points of P^1 mapping into the quartic.
inline int set_intersection_count(const RationalCurveMap& c, const PlaneQuartic& q)
{
    auto [f, n] = pull_back(c, q.form());
    return squarefree_part(f).degree() + (f.degree() < n ? 1 : 0);
}

/// Multiplicities of the points of P^1 mapping into the quartic, descending.
inline std::vector<int> contact_multiplicities(const RationalCurveMap& c, const PlaneQuartic& q)
{
    auto [f, n] = pull_back(c, q.form());
    std::vector<int> out;
    if (f.degree() < n) out.push_back(n - f.degree());
    for (const auto& [g, m] : squarefree_decomposition(f))
        for (int k = 0; k < g.degree(); ++k) out.push_back(m);
    std::sort(out.rbegin(), out.rend());
    return out;
}

struct HyperbolicityReport {
    long g = 0, i = 0, e = 0;
    long lhs = 0; // 2g - 2 + i
    Rat rhs;      // e / 2
    bool violates = false;
};

inline HyperbolicityReport check_inequality(long g, long i, long e)
{
    if (e < 1) throw std::invalid_argument("check_inequality: degree must be positive");
    HyperbolicityReport r{g, i, e, 2 * g - 2 + i, make_rat(e, 2), false};
    r.violates = Rat(r.lhs) < r.rhs;
    return r;
}

// --- violating lines ----------------------------------------------------------

/// Lines meeting the quartic in at most two points: I = J = 0 ({3,1}, {4})
/// or the sextic covariant vanishes ({2,2}, {4}).
struct ViolatingLines {
    std::vector<LineFamily> flex, bitangent;
    UPoly flex_slopes, bitangent_slopes;
    // I and J have degrees 4 and 6 and no common component, so by Bezout they
    // meet in at most 24 lines; all 24 flex lines are among them.
    bool flex_part_exact = false;
    // every zero of the sextic covariant has a bitangent slope, and over each
    // such slope there is exactly one
    bool bitangent_part_exact = false;
    UPoly covariant_slopes; // square-free gcd of the eliminants
    int count() const { return flex_slopes.degree() + bitangent_slopes.degree(); }
    bool exact() const { return flex_part_exact && bitangent_part_exact; }
};

inline ViolatingLines violating_lines(QuarticGeometry& G)
{
    const BitangentData bit = G.bitangents();
    const FlexData flex = G.flexes();
    ViolatingLines out;
    for (const auto& f : flex.families) out.flex.push_back(f.lines);
    out.flex_slopes = flex.slopes;
    out.bitangent = bit.families;
    out.bitangent_slopes = primitive(bit.proper * bit.hyperflex_lines);

    // flex part
    const auto [I, J] = detail::chart_invariants(G.pencil());
    bool on_both = true;
    for (const auto& f : flex.families) {
        auto mod = std::make_shared<const UPoly>(f.lines.slope);
        NF s = NF::generator(mod), t(mod, f.lines.intercept);
        if (!detail::eval_nf(I, {s, t}, mod).is_literally_zero() || !detail::eval_nf(J, {s, t}, mod).is_literally_zero())
            on_both = false;
    }
    out.flex_part_exact = on_both && flex.hyperflexes() == 0 && flex.distinct() == I.total_degree() * J.total_degree() &&
                          detail::proven_coprime(I, J, 1, 0);

    // bitangent part, from random combinations of the covariant's coefficients
    BinaryQuartic<Poly> f{G.pencil()[4], G.pencil()[3], G.pencil()[2], G.pencil()[1], G.pencil()[0]};
    const auto T = sextic_covariant(f);
    std::mt19937_64 rng(0x7a11);
    auto combo = [&] {
        Poly c(st_vars());
        for (const auto& t : T) c += t * Rat(uniform_symmetric(rng, 5));
        return c;
    };
    const UPoly target = squarefree_part(out.bitangent_slopes);
    for (int attempt = 0; attempt < 4 && !out.bitangent_part_exact; ++attempt) {
        Poly A = combo(), B = combo();
        if (A.degree(1) < 1 || B.degree(1) < 1) continue;
        Elimination ab = eliminate(A, B, 1, 0, true);
        if (ab.resultant.is_zero() || !ab.has_s1) continue;
        UPoly g = ab.resultant;
        for (int extra = 0; extra < 3; ++extra) {
            Poly C = combo();
            if (C.degree(1) < 1) continue;
            UPoly r = eliminate(A, C, 1, 0).resultant;
            if (!r.is_zero()) g = gcd(g, r);
        }
        out.covariant_slopes = primitive(squarefree_part(g));
        if (!(out.covariant_slopes == primitive(target))) continue;
        // one common zero of A and B over each slope: leading coefficients in t
        // and the first subresultant's leading coefficient are units there
        const auto la = A.coefficients_in(1).back().to_upoly(0), lb = B.coefficients_in(1).back().to_upoly(0);
        bool unique = true;
        for (const UPoly& u : {la, lb, ab.s1_linear})
            if (gcd(u, target).degree() != 0) unique = false;
        out.bitangent_part_exact = unique;
    }
    return out;
}

/// Counts how many of n random integer lines outside the special set satisfy
/// the inequality. Special lines hit by chance are skipped and not counted.
struct LineSample {
    int sampled = 0, satisfied = 0, skipped_special = 0;
};

inline LineSample sample_random_lines(const PlaneQuartic& q, int n, std::mt19937_64& rng, long height = 50)
{
    LineSample s;
    while (s.sampled < n) {
        RatLine l{Rat(uniform_symmetric(rng, height)), Rat(uniform_symmetric(rng, height)), Rat(uniform_symmetric(rng, height))};
        if (l[0] == 0 && l[1] == 0 && l[2] == 0) continue;
        int i = set_intersection_count(RationalCurveMap::line(l), q);
        if (i <= 2) {
            ++s.skipped_special;
            continue;
        }
        ++s.sampled;
        if (!check_inequality(0, i, 1).violates) ++s.satisfied;
    }
    return s;
}

// --- the equality case: a conic with contact 6 at one point -----------------

/// Smooth conic through a rational point, with a parametrization sending
/// (0 : 1) to that point.
struct PointedConic {
    Poly form;
    RatPoint point;
    RationalCurveMap param;
};

inline PointedConic pointed_conic(const Poly& C, const RatPoint& p)
{
    if (C.total_degree() != 2 || !C.is_homogeneous()) throw std::invalid_argument("pointed_conic: not a conic");
    std::vector<Rat> pv(p.begin(), p.end());
    if (C(pv) != 0) throw std::invalid_argument("pointed_conic: point is not on the conic");
    // symmetric matrix: B(x, y) = x^T M y with C(x) = B(x, x)
    Mat3 M{};
    for (const auto& [e, c] : C.terms()) {
        std::vector<int> idx;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < e[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) M[idx[0]][idx[0]] += c;
        else {
            M[idx[0]][idx[1]] += c / 2;
            M[idx[1]][idx[0]] += c / 2;
        }
    }
    if (det(M) == 0) throw std::invalid_argument("pointed_conic: conic is singular");
    auto B = [&](const RatPoint& x, const RatPoint& y) {
        Rat r = 0;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) r += x[i] * M[i][k] * y[k];
        return r;
    };
    // tangent direction w2 (B(p, w2) = 0, independent of p) and any w1 off it
    RatLine tangent{B({1, 0, 0}, p), B({0, 1, 0}, p), B({0, 0, 1}, p)};
    auto basis = line_basis(tangent);
    RatPoint w2 = basis[0];
    for (const auto& cand : basis) {
        bool multiple = cand[0] * p[1] - cand[1] * p[0] == 0 && cand[0] * p[2] - cand[2] * p[0] == 0 &&
                        cand[1] * p[2] - cand[2] * p[1] == 0;
        if (!multiple) {
            w2 = cand;
            break;
        }
    }
    RatPoint w1{1, 0, 0};
    for (const RatPoint& cand : {RatPoint{1, 0, 0}, RatPoint{0, 1, 0}, RatPoint{0, 0, 1}})
        if (B(p, cand) != 0) {
            w1 = cand;
            break;
        }
    // x(w) = C(w) p - 2 B(p, w) w with w = u w1 + v w2
    const Vars& uv = RationalCurveMap::uv_vars();
    Poly u = Poly::variable(uv, "u"), v = Poly::variable(uv, "v");
    std::array<Poly, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = u * w1[i] + v * w2[i];
    Poly Cw(uv), Bpw(uv);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Cw += w[i] * w[k] * M[i][k];
            Bpw += w[k] * (p[i] * M[i][k]);
        }
    PointedConic out{C, p, {}};
    for (int i = 0; i < 3; ++i) out.param.param[i] = Cw * p[i] - Bpw * w[i] * Rat(2);
    out.param.degree = 2;
    return out;
}

/// Rows: linear conditions on the 15 quartic coefficients saying that the
/// pulled-back octic has vanishing coefficients of u^k v^(8-k), k in `orders`.
inline RatMatrix pullback_conditions(const RationalCurveMap& c, const std::vector<int>& orders)
{
    const auto& mons = quartic_monomials();
    std::vector<Poly> images;
    for (const auto& e : mons) {
        Poly m(RationalCurveMap::uv_vars(), Rat(1));
        for (int i = 0; i < 3; ++i) m = m * c.param[i].pow(static_cast<unsigned>(e[i]));
        images.push_back(m);
    }
    RatMatrix rows;
    for (int k : orders) {
        std::vector<Rat> row;
        for (const auto& img : images) row.push_back(detail::coefficient(img, {k, 4 * c.degree - k}));
        rows.push_back(row);
    }
    return rows;
}

struct SharpnessPair {
    PointedConic conic;
    std::optional<PlaneQuartic> quartic;
    std::size_t condition_rank = 0; // contact conditions at the point
    std::size_t system_dimension = 0;
    std::vector<int> contact;       // multiplicities along the conic
    int intersection_count = 0;
    HyperbolicityReport report;
    long log_normal = 0;
    int samples = 0;
    bool verified() const
    {
        return quartic && condition_rank == 6 && contact == std::vector<int>{6, 1, 1} && intersection_count == 3 &&
               report.lhs == 1 && report.rhs == 1 && !report.violates && log_normal == -1;
    }
};

/// Quartics meeting the conic with contact at least 6 at the point form a
/// linear system (6 conditions); sample smooth members until one meets the
/// conic in exactly 3 points.
inline SharpnessPair sharpness_conic(const Poly& C, const RatPoint& p, std::mt19937_64& rng, int max_samples = 200)
{
    SharpnessPair out{pointed_conic(C, p), std::nullopt};
    // the point is (0 : 1), i.e. u = 0: the coefficients of u^0 .. u^5 vanish
    RatMatrix cond = pullback_conditions(out.conic.param, {0, 1, 2, 3, 4, 5});
    out.condition_rank = rank(cond);
    auto basis = nullspace(cond, 15);
    out.system_dimension = basis.size();
    for (out.samples = 1; out.samples <= max_samples; ++out.samples) {
        std::array<Rat, 15> coeffs{};
        for (const auto& b : basis) {
            Rat r(uniform_symmetric(rng, 3));
            for (std::size_t k = 0; k < 15; ++k) coeffs[k] += r * b[k];
        }
        try {
            PlaneQuartic q(coeffs);
            auto mult = contact_multiplicities(out.conic.param, q);
            if (mult != std::vector<int>{6, 1, 1}) continue;
            out.quartic = q;
            out.contact = mult;
            out.intersection_count = set_intersection_count(out.conic.param, q);
            break;
        } catch (const SingularQuartic&) {
        } catch (const std::invalid_argument&) {
            // conic inside the quartic
        }
    }
    if (!out.quartic) throw CertificationError("sharpness_conic: no smooth member with contact {6,1,1}");
    out.report = check_inequality(0, out.intersection_count, 2);
    out.log_normal = log_normal_degree(0, out.intersection_count, 4, 2, 2);
    return out;
}

/// Parameter count for pairs (conic, quartic) with contact 6 at a point.
struct DimensionLedger {
    long conics = 5;
    long quartics_through_conic = 0; // h^0(I_C(4)), by exact rank
    long point_choices = 3;          // a point of C and the residual pair in Sym^2 C
    long fiber = 0;
    long total = 0;
    long quartic_space = 14;
    bool consistent() const
    {
        return quartics_through_conic == 6 && fiber == 9 && total == 14 && total == quartic_space;
    }
};

inline DimensionLedger dimension_count_W(const Poly& C = Poly::parse("x*z - y^2", xyz_vars()), const RatPoint& p = {0, 0, 1})
{
    DimensionLedger d;
    auto pc = pointed_conic(C, p);
    std::vector<int> all(9);
    for (int k = 0; k < 9; ++k) all[static_cast<std::size_t>(k)] = k;
    d.quartics_through_conic = 15 - static_cast<long>(rank(pullback_conditions(pc.param, all)));
    d.fiber = d.quartics_through_conic + d.point_choices;
    d.total = d.conics + d.fiber;
    return d;
}

} // namespace quartic

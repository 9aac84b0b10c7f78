#pragma once

// Plane quartics: storage, the quartic-v1 text format, smoothness
// certificates, Hessian, tangent lines and line contact profiles.

#include "binary_quartic.hpp"
#include "elimination.hpp"
#include "linalg.hpp"
#include "numberfield.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "roots.hpp"
#include "upoly.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartic {

inline const Vars& xyz_vars()
{
    static const Vars v = make_vars({"x", "y", "z"});
    return v;
}

inline const Vars& xy_vars()
{
    static const Vars v = make_vars({"x", "y"});
    return v;
}

// affine chart of lines y = s x + t z
inline const Vars& st_vars()
{
    static const Vars v = make_vars({"s", "t"});
    return v;
}

inline const Vars& abc_vars()
{
    static const Vars v = make_vars({"a", "b", "c"});
    return v;
}

/// Degree-4 monomials in x, y, z in graded-lex order: x^4, x^3y, x^3z, ..., z^4.
inline const std::array<Exponent, 15>& quartic_monomials()
{
    static const std::array<Exponent, 15> m = [] {
        std::array<Exponent, 15> out;
        std::size_t k = 0;
        for (int i = 4; i >= 0; --i)
            for (int j = 4 - i; j >= 0; --j) out[k++] = {i, j, 4 - i - j};
        return out;
    }();
    return m;
}

class SingularQuartic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The chosen coordinates cannot certify something that is generically true;
// the caller moves on to the next chart.
class ChartDegenerate : public CertificationError {
public:
    using CertificationError::CertificationError;
};

// --- projective transforms --------------------------------------------------

using Mat3 = std::array<std::array<Rat, 3>, 3>;

inline Mat3 identity3()
{
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
    return m;
}

inline Mat3 operator*(const Mat3& a, const Mat3& b)
{
    Mat3 c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            c[i][j] = 0;
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline Rat det(const Mat3& m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 inverse(const Mat3& m)
{
    Rat d = det(m);
    if (d == 0) throw std::domain_error("inverse: singular matrix");
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
        }
    return r;
}

/// Chart k: identity for k = 0, otherwise a fixed unimodular integer matrix
/// (upper times lower unitriangular, entries in [-2, 2]) derived from k.
inline Mat3 chart_transform(int k)
{
    if (k == 0) return identity3();
    std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned long long>(k));
    Mat3 u = identity3(), l = identity3();
    u[0][1] = uniform_symmetric(rng, 2);
    u[0][2] = uniform_symmetric(rng, 2);
    u[1][2] = uniform_symmetric(rng, 2);
    l[1][0] = uniform_symmetric(rng, 2);
    l[2][0] = uniform_symmetric(rng, 2);
    l[2][1] = uniform_symmetric(rng, 2);
    return u * l;
}

/// F(g x) for a form F in x, y, z.
inline Poly transform(const Poly& F, const Mat3& g)
{
    const Vars& v = F.vars();
    std::map<std::string, Poly> sub;
    for (int i = 0; i < 3; ++i) {
        Poly row(v);
        for (int j = 0; j < 3; ++j) row += Poly::variable(v, (*v)[static_cast<std::size_t>(j)]) * g[i][j];
        sub.emplace((*v)[static_cast<std::size_t>(i)], row);
    }
    return F.substitute(sub);
}

// --- basic geometry of a ternary form -----------------------------------------

inline Poly hessian(const Poly& F)
{
    Poly h[3][3];
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) h[i][j] = F.derivative(i).derivative(j);
    return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
           h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

/// Coefficients a_k(s, t) of X^k in F(X, sX + t, 1).
inline std::array<Poly, 5> pencil_coefficients(const Poly& F)
{
    static const Vars xst = make_vars({"X", "s", "t"});
    Poly X = Poly::variable(xst, "X"), s = Poly::variable(xst, "s"), t = Poly::variable(xst, "t");
    Poly r = F.substitute({{"x", X}, {"y", s * X + t}, {"z", Poly(xst, Rat(1))}});
    std::array<Poly, 5> a;
    for (auto& p : a) p = Poly(st_vars());
    for (const auto& [e, c] : r.terms()) {
        if (e[0] > 4) throw std::invalid_argument("pencil_coefficients: degree above 4");
        a[static_cast<std::size_t>(e[0])] += Poly::monomial(st_vars(), c, {e[1], e[2]});
    }
    return a;
}

/// Restriction to a line, as a binary quartic: coefficient k is that of
/// X^(4-k) Z^k along the points (X : sX + tZ : Z).
template <class T>
BinaryQuartic<T> pencil_form(const std::array<Poly, 5>& a, const std::vector<T>& st,
                             const std::function<T(const Rat&)>& lift)
{
    BinaryQuartic<T> f;
    for (int k = 0; k <= 4; ++k) f[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(4 - k)].evaluate_with(st, lift);
    return f;
}

// --- smoothness -----------------------------------------------------------

struct SmoothnessCertificate {
    int chart = 0;              // index of the transform used
    Rat affine_witness;         // res_x(res_y(Fx, Fy), res_y(Fx, Fz)) at z = 1, nonzero
    Rat infinity_witness;       // res_y(Fx, Fy + lambda Fz) at z = 0, x = 1, nonzero
    int lambda = 0;
};

namespace detail {

// res(p, q) with the convention res(c, q) = c^deg q for constants
inline Rat witness_resultant(const UPoly& p, const UPoly& q)
{
    if (p.degree() == 0) return pow(p.coeff(0), static_cast<unsigned>(std::max(q.degree(), 0)));
    if (q.degree() == 0) return pow(q.coeff(0), static_cast<unsigned>(p.degree()));
    return resultant(p, q);
}

// Restrict a form in x, y, z to z = 1 (xy context) or to z = 0, x = 1 (y only).
inline Poly affine_part(const Poly& F)
{
    Poly r(xy_vars());
    for (const auto& [e, c] : F.terms()) r += Poly::monomial(xy_vars(), c, {e[0], e[1]});
    return r;
}

inline UPoly at_infinity(const Poly& F)
{
    std::vector<Rat> c(static_cast<std::size_t>(std::max(F.total_degree(), 0) + 1), Rat(0));
    for (const auto& [e, v] : F.terms())
        if (e[2] == 0) c[static_cast<std::size_t>(e[1])] += v;
    return UPoly(c);
}

inline Rat coefficient(const Poly& F, const Exponent& e)
{
    auto it = F.terms().find(e);
    return it == F.terms().end() ? Rat(0) : it->second;
}

} // namespace detail

/// Certifies that V(F_x, F_y, F_z) is empty, or throws SingularQuartic.
/// Tries charts in order; a chart qualifies when each partial has a
/// nonzero y^3 coefficient, so both eliminations specialize faithfully.
inline SmoothnessCertificate assert_smooth(const Poly& F, int max_charts = 16)
{
    if (!F.is_homogeneous() || F.total_degree() != 4) throw std::invalid_argument("assert_smooth: not a quartic form");
    for (std::size_t i = 0; i < 3; ++i)
        if (F.derivative(i).is_zero()) {
            // F is a form in two variables: a union of four concurrent lines
            throw SingularQuartic("singular: F does not involve " + (*F.vars())[i] +
                                  ", so the coordinate point of that variable is singular");
        }
    for (int k = 0; k < max_charts; ++k) {
        Poly Fc = transform(F, chart_transform(k));
        std::array<Poly, 3> d{Fc.derivative(0), Fc.derivative(1), Fc.derivative(2)};
        bool ok = true;
        for (const auto& p : d) ok = ok && detail::coefficient(p, {0, 3, 0}) != 0;
        if (!ok) continue;
        std::array<Poly, 3> a{detail::affine_part(d[0]), detail::affine_part(d[1]), detail::affine_part(d[2])};
        auto e1 = eliminate(a[0], a[1], 1, 0, true);
        auto e2 = eliminate(a[0], a[2], 1, 0);
        if (e1.resultant.is_zero() || e2.resultant.is_zero())
            throw SingularQuartic("singular: two partial derivatives share a curve component");
        UPoly g = gcd(e1.resultant, e2.resultant);
        if (g.degree() > 0) {
            // common x-coordinates: decide whether a common zero really sits there
            if (!e1.has_s1) continue;
            std::vector<UPoly> singular_x;
            std::function<int(const std::shared_ptr<const UPoly>&)> probe = [&](const std::shared_ptr<const UPoly>& m) {
                NF lin(m, e1.s1_linear), con(m, e1.s1_constant);
                if (lin.is_zero()) return -1;
                NF x = NF::generator(m), y = -con * lin.inverse();
                auto lift = [&](const Rat& c) { return NF(m, c); };
                NF v = a[2].evaluate_with(std::vector<NF>{x, y}, lift);
                return v.is_zero() ? 1 : 0;
            };
            bool unresolved = false;
            for (auto& [factor, verdict] : split_evaluate<int>(g, probe)) {
                if (verdict == 1) singular_x.push_back(factor);
                if (verdict == -1) unresolved = true;
            }
            if (!singular_x.empty()) {
                std::ostringstream os;
                os << "singular: " ;
                int count = 0;
                for (const auto& f : singular_x) count += f.degree();
                os << count << " singular point(s); chart " << k << " x-coordinates are roots of";
                for (const auto& f : singular_x) os << " [" << f.to_string("x") << "]";
                if (!singular_x.empty() && singular_x.front().degree() <= 4) {
                    for (const auto& c : isolate_roots(singular_x.front())) os << " ~ " << describe(c.box, 12);
                }
                throw SingularQuartic(os.str());
            }
            if (unresolved) continue;
            // common x only by coincidence in this chart
            continue;
        }
        SmoothnessCertificate cert;
        cert.chart = k;
        cert.affine_witness = detail::witness_resultant(e1.resultant, e2.resultant);
        std::array<UPoly, 3> b{detail::at_infinity(d[0]), detail::at_infinity(d[1]), detail::at_infinity(d[2])};
        bool found = false;
        for (int lambda = 0; lambda <= 8 && !found; ++lambda) {
            UPoly other = b[1] + b[2] * UPoly::constant(Rat(lambda));
            if (other.is_zero()) continue;
            Rat w = detail::witness_resultant(b[0], other);
            if (w != 0) {
                cert.infinity_witness = w;
                cert.lambda = lambda;
                found = true;
            }
        }
        if (!found) {
            UPoly h = gcd(gcd(b[0], b[1]), b[2]);
            if (h.degree() > 0)
                throw SingularQuartic("singular: singular point on the line z = 0 of chart " + std::to_string(k) +
                                      ", y-coordinates roots of " + h.to_string("y"));
            continue;
        }
        return cert;
    }
    throw CertificationError("assert_smooth: no chart gave a decisive certificate");
}

/// Recomputes the witnesses with Sylvester determinants.
inline bool verify_certificate(const Poly& F, const SmoothnessCertificate& cert)
{
    Poly Fc = transform(F, chart_transform(cert.chart));
    std::array<Poly, 3> a;
    std::array<UPoly, 3> b;
    for (std::size_t i = 0; i < 3; ++i) {
        Poly d = Fc.derivative(i);
        a[i] = detail::affine_part(d);
        b[i] = detail::at_infinity(d);
    }
    UPoly r1 = sylvester_resultant(a[0], a[1], 1).to_upoly("x");
    UPoly r2 = sylvester_resultant(a[0], a[2], 1).to_upoly("x");
    auto int_form = [](const UPoly& p) { return to_primitive_int(p); };
    auto det_res = [&](const UPoly& p, const UPoly& q) -> Rat {
        if (p.is_zero() || q.is_zero()) return Rat(0);
        if (p.degree() == 0 || q.degree() == 0) return detail::witness_resultant(p, q);
        auto [pi, ps] = int_form(p);
        auto [qi, qs] = int_form(q);
        return Rat(sylvester_resultant(pi, degree(pi), qi, degree(qi))) * pow(ps, static_cast<unsigned>(q.degree())) *
               pow(qs, static_cast<unsigned>(p.degree()));
    };
    if (det_res(r1, r2) != cert.affine_witness || cert.affine_witness == 0) return false;
    UPoly q = b[1] + b[2] * UPoly::constant(Rat(cert.lambda));
    return cert.infinity_witness != 0 && det_res(b[0], q) == cert.infinity_witness;
}

// --- the quartic ------------------------------------------------------------

class PlaneQuartic {
public:
    explicit PlaneQuartic(const std::array<Rat, 15>& coeffs) : coeffs_(coeffs), form_(xyz_vars())
    {
        for (std::size_t i = 0; i < 15; ++i)
            if (coeffs_[i] != 0) form_ += Poly::monomial(xyz_vars(), coeffs_[i], quartic_monomials()[i]);
        if (form_.is_zero()) throw std::invalid_argument("PlaneQuartic: zero form");
        cert_ = assert_smooth(form_);
    }

    static PlaneQuartic from_form(const Poly& F)
    {
        Poly G = F.embed(xyz_vars());
        if (!G.is_homogeneous() || G.total_degree() != 4) throw std::invalid_argument("PlaneQuartic: not a quartic form");
        std::array<Rat, 15> c;
        for (std::size_t i = 0; i < 15; ++i) c[i] = detail::coefficient(G, quartic_monomials()[i]);
        return PlaneQuartic(c);
    }

    static PlaneQuartic fermat() { return from_form(Poly::parse("x^4 + y^4 + z^4", xyz_vars())); }

    /// Random integer coefficients in [-height, height], resampled until smooth.
    static PlaneQuartic random(std::mt19937_64& rng, long height = 10)
    {
        for (;;) {
            std::array<Rat, 15> c;
            for (auto& v : c) v = uniform_symmetric(rng, height);
            try {
                return PlaneQuartic(c);
            } catch (const SingularQuartic&) {
            } catch (const std::invalid_argument&) {
            }
        }
    }

    /// quartic-v1: the tag line, then 15 rationals in graded-lex order.
    static PlaneQuartic parse(const std::string& text)
    {
        std::istringstream in(text);
        std::string tag;
        if (!(in >> tag) || tag != "quartic-v1") throw ParseError("quartic file: missing 'quartic-v1' tag");
        std::array<Rat, 15> c;
        for (std::size_t i = 0; i < 15; ++i) {
            std::string tok;
            if (!(in >> tok)) throw ParseError("quartic file: expected 15 coefficients, got " + std::to_string(i));
            c[i] = parse_rat(tok);
        }
        std::string extra;
        if (in >> extra) throw ParseError("quartic file: trailing data '" + extra + "'");
        return PlaneQuartic(c);
    }

    std::string serialize() const
    {
        std::string s = "quartic-v1\n";
        for (std::size_t i = 0; i < 15; ++i) s += to_string(coeffs_[i]) + (i % 5 == 4 ? "\n" : " ");
        return s;
    }

    const std::array<Rat, 15>& coefficients() const { return coeffs_; }
    const Poly& form() const { return form_; }
    const SmoothnessCertificate& certificate() const { return cert_; }

private:
    std::array<Rat, 15> coeffs_;
    Poly form_;
    SmoothnessCertificate cert_;
};

inline Poly hessian(const PlaneQuartic& q) { return hessian(q.form()); }

// --- points, lines, contact -------------------------------------------------

using RatPoint = std::array<Rat, 3>;
using RatLine = std::array<Rat, 3>; // a x + b y + c z = 0

/// Scales so the coordinate of largest absolute value is 1 (first one on ties).
inline std::array<Rat, 3> canonical(std::array<Rat, 3> v)
{
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (abs(v[i]) > abs(v[k])) k = i;
    if (v[k] == 0) throw std::invalid_argument("canonical: zero vector");
    Rat s = v[k];
    for (auto& c : v) c /= s;
    return v;
}

inline RatLine tangent_line(const PlaneQuartic& q, const RatPoint& p)
{
    std::vector<Rat> pt(p.begin(), p.end());
    if (q.form()(pt) != 0) throw std::invalid_argument("tangent_line: point is not on the quartic");
    RatLine l;
    for (std::size_t i = 0; i < 3; ++i) l[i] = q.form().derivative(i)(pt);
    return canonical(l);
}

/// The restriction of F to the line as a binary quartic in a fixed
/// parametrization u P + v Q.
inline std::array<RatPoint, 2> line_basis(const RatLine& l)
{
    RatMatrix m{{l[0], l[1], l[2]}};
    auto basis = nullspace(m, 3);
    if (basis.size() != 2) throw std::invalid_argument("line_basis: zero line");
    return {RatPoint{basis[0][0], basis[0][1], basis[0][2]}, RatPoint{basis[1][0], basis[1][1], basis[1][2]}};
}

inline BinaryQuartic<Rat> restrict_to_line(const Poly& F, const RatLine& l)
{
    auto basis = line_basis(l);
    static const Vars uv = make_vars({"u", "v"});
    Poly u = Poly::variable(uv, "u"), v = Poly::variable(uv, "v");
    std::map<std::string, Poly> sub;
    for (std::size_t i = 0; i < 3; ++i) sub.emplace((*F.vars())[i], u * basis[0][i] + v * basis[1][i]);
    Poly r = F.substitute(sub);
    BinaryQuartic<Rat> f;
    for (int k = 0; k <= 4; ++k) f[static_cast<std::size_t>(k)] = detail::coefficient(r, {4 - k, k});
    return f;
}

/// Contact orders of the line with the quartic, descending; they sum to 4.
inline std::vector<int> contact_profile(const RatLine& l, const PlaneQuartic& q)
{
    return root_multiplicities(restrict_to_line(q.form(), l));
}

} // namespace quartic

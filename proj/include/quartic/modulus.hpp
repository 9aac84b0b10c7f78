#pragma once

// Cross-ratios and j-invariants of four points on a line, the map sending a
// line to the j-invariant of its intersection with the quartic, and the
// constant-j curves in the dual plane.

#include "binary_quartic.hpp"
#include "numberfield.hpp"
#include "quartic.hpp"
#include "roots.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartic {

/// Raised where the modular maps are not defined. Boundary: the four points
/// are not distinct. Flex: some contact order is 3 or 4. TangencyPoint: the
/// marked point is the point of tangency.
class UndefinedLocus : public std::domain_error {
public:
    enum class Cause { Boundary, Flex, TangencyPoint };
    UndefinedLocus(Cause c, const std::string& what) : std::domain_error(what), cause_(c) {}
    Cause cause() const { return cause_; }

private:
    Cause cause_;
};

// --- cross-ratio and j ------------------------------------------------------

using P1Point = std::array<Rat, 2>; // (u : v) stands for u / v; v = 0 is infinity

struct CrossRatio {
    std::optional<Rat> value; // empty means infinity
    bool degenerate = false;  // value in {0, 1, infinity}
};

/// (p1 - p2)(p3 - p4) / ((p1 - p3)(p2 - p4)), in homogeneous form.
inline CrossRatio cross_ratio(const std::array<P1Point, 4>& p)
{
    auto d = [&](int i, int k) -> Rat { return p[i][0] * p[k][1] - p[k][0] * p[i][1]; };
    for (const auto& q : p)
        if (q[0] == 0 && q[1] == 0) throw std::invalid_argument("cross_ratio: (0 : 0) is not a point");
    Rat num = d(0, 1) * d(2, 3), den = d(0, 2) * d(1, 3);
    CrossRatio out;
    if (den != 0) out.value = num / den;
    out.degenerate = num == 0 || den == 0 || num == den;
    return out;
}

inline CrossRatio cross_ratio(const Rat& p1, const Rat& p2, const Rat& p3, const Rat& p4)
{
    return cross_ratio({P1Point{p1, 1}, P1Point{p2, 1}, P1Point{p3, 1}, P1Point{p4, 1}});
}

/// Numerator 256 (l^2 - l + 1)^3 and denominator l^2 (l - 1)^2 of j(l), over
/// any ring (used with Rat, number-field elements and boxes).
template <class T>
std::pair<T, T> j_fraction(const T& l, const T& one)
{
    T q = l * l - l + one;
    T m = l - one;
    return {q * q * q * Rat(256), l * l * m * m};
}

inline Rat j_from_lambda(const CrossRatio& l)
{
    if (l.degenerate || !l.value) throw UndefinedLocus(UndefinedLocus::Cause::Boundary, "j_from_lambda: cross-ratio in {0, 1, inf}");
    auto [n, d] = j_fraction(*l.value, Rat(1));
    return n / d;
}

inline Rat j_from_lambda(const Rat& l)
{
    CrossRatio c{l, l == 0 || l == 1};
    return j_from_lambda(c);
}

/// The six values l, 1 - l, 1/l, 1/(1 - l), (l - 1)/l, l/(l - 1); duplicates
/// removed, sorted.
inline std::vector<Rat> s4_orbit(const Rat& l)
{
    if (l == 0 || l == 1) throw UndefinedLocus(UndefinedLocus::Cause::Boundary, "s4_orbit: degenerate cross-ratio");
    std::vector<Rat> v{l, 1 - l, 1 / l, 1 / (1 - l), (l - 1) / l, l / (l - 1)};
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// j of the four roots from the invariants: 6912 I^3 / (4 I^3 - J^2).
inline Rat j_from_binary_quartic(const BinaryQuartic<Rat>& b)
{
    Rat i = invariant_I(b), j = invariant_J(b);
    Rat den = i * i * i * 4 - j * j;
    if (den == 0) throw UndefinedLocus(UndefinedLocus::Cause::Boundary, "j_from_binary_quartic: repeated root");
    return j_constant() * i * i * i / den;
}

// --- weighted projective line P(2,3) ----------------------------------------

/// (a, b) ~ (m^2 a, m^3 b): the cubic x^3 + a x + b up to scaling of x.
struct ABPoint {
    Rat a, b;

    // a^3 / b^2, with b = 0 reported as empty (j = 1728)
    std::optional<Rat> ratio() const
    {
        if (b == 0) return std::nullopt;
        return a * a * a / (b * b);
    }
    friend bool operator==(const ABPoint& p, const ABPoint& q)
    {
        return p.a * p.a * p.a * q.b * q.b == q.a * q.a * q.a * p.b * p.b && (p.a == 0) == (q.a == 0) &&
               (p.b == 0) == (q.b == 0);
    }
};

/// j of the roots of x^3 + a x + b together with the point at infinity.
inline Rat j_of_cubic(const ABPoint& p)
{
    return j_from_binary_quartic({Rat(0), Rat(1), Rat(0), p.a, p.b});
}

inline ABPoint ab_from_j(const Rat& j0)
{
    if (j0 == 0) return {Rat(0), Rat(1)};
    if (j0 == 1728) return {Rat(1), Rat(0)};
    Rat k = 1728 - j0;
    return {3 * j0 * k, 2 * j0 * k * k};
}

// --- certified numerics -----------------------------------------------------

namespace detail {

inline Rat round_down(const Rat& x, unsigned bits)
{
    Int n = x.get_num();
    n <<= bits;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    Int d = 1;
    d <<= bits;
    return Rat(q, d);
}

inline Rat round_up(const Rat& x, unsigned bits) { return -round_down(-x, bits); }

struct Interval {
    Rat lo, hi;
};

inline Interval imul(const Interval& a, const Interval& b)
{
    Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline Interval isquare(const Interval& a)
{
    Interval r = imul(a, a);
    if (a.lo <= 0 && a.hi >= 0) r.lo = 0;
    return r;
}

} // namespace detail

/// Complex box arithmetic with outward rounding to a dyadic grid. Results
/// always contain the exact result of the same operation on contained points.
class BoxNumber {
public:
    BoxNumber() = default;
    BoxNumber(const Rat& c) : re_{c, c}, im_{c * 0, c * 0} {}
    BoxNumber(const ComplexBox& b, unsigned bits) : re_{b.re_lo, b.re_hi}, im_{b.im_lo, b.im_hi}, bits_(bits) {}

    ComplexBox box() const { return {re_.lo, re_.hi, im_.lo, im_.hi}; }

    friend BoxNumber operator+(const BoxNumber& a, const BoxNumber& b)
    {
        return make({a.re_.lo + b.re_.lo, a.re_.hi + b.re_.hi}, {a.im_.lo + b.im_.lo, a.im_.hi + b.im_.hi}, a, b);
    }
    friend BoxNumber operator-(const BoxNumber& a, const BoxNumber& b)
    {
        return make({a.re_.lo - b.re_.hi, a.re_.hi - b.re_.lo}, {a.im_.lo - b.im_.hi, a.im_.hi - b.im_.lo}, a, b);
    }
    friend BoxNumber operator*(const BoxNumber& a, const BoxNumber& b)
    {
        auto rr = detail::imul(a.re_, b.re_), ii = detail::imul(a.im_, b.im_);
        auto ri = detail::imul(a.re_, b.im_), ir = detail::imul(a.im_, b.re_);
        return make({rr.lo - ii.hi, rr.hi - ii.lo}, {ri.lo + ir.lo, ri.hi + ir.hi}, a, b);
    }
    friend BoxNumber operator*(const BoxNumber& a, const Rat& c) { return a * BoxNumber(c); }
    friend BoxNumber operator/(const BoxNumber& a, const BoxNumber& b) { return a * b.reciprocal(); }

    BoxNumber reciprocal() const
    {
        auto n2 = detail::isquare(re_), m2 = detail::isquare(im_);
        detail::Interval mod{n2.lo + m2.lo, n2.hi + m2.hi};
        if (mod.lo <= 0) throw CertificationError("BoxNumber: division by a box containing 0");
        detail::Interval inv{1 / mod.hi, 1 / mod.lo};
        auto re = detail::imul(re_, inv), im = detail::imul({-im_.hi, -im_.lo}, inv);
        BoxNumber r;
        r.bits_ = bits_;
        r.re_ = r.round(re);
        r.im_ = r.round(im);
        return r;
    }

private:
    static BoxNumber make(detail::Interval re, detail::Interval im, const BoxNumber& a, const BoxNumber& b)
    {
        BoxNumber r;
        r.bits_ = std::max(a.bits_, b.bits_);
        r.re_ = r.round(re);
        r.im_ = r.round(im);
        return r;
    }
    detail::Interval round(const detail::Interval& x) const
    {
        if (bits_ == 0) return x;
        return {detail::round_down(x.lo, bits_), detail::round_up(x.hi, bits_)};
    }

    detail::Interval re_{Rat(0), Rat(0)}, im_{Rat(0), Rat(0)};
    unsigned bits_ = 0; // 0: exact
};

/// j of the roots of b computed from certified root boxes (the root-based
/// oracle). Refines until the box is at most 2^-width_bits wide.
inline ComplexBox j_from_roots(const BinaryQuartic<Rat>& b, unsigned width_bits = 64)
{
    std::vector<Rat> c(5);
    for (int k = 0; k <= 4; ++k) c[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(4 - k)];
    UPoly f(c);
    auto clusters = isolate_roots(f);
    int finite = 0;
    for (const auto& cl : clusters) {
        if (cl.multiplicity != 1) throw UndefinedLocus(UndefinedLocus::Cause::Boundary, "j_from_roots: repeated root");
        ++finite;
    }
    if (finite < 3) throw UndefinedLocus(UndefinedLocus::Cause::Boundary, "j_from_roots: repeated root at infinity");
    const Rat target = Rat(1) / Rat(Int(1) << width_bits);
    for (unsigned bits = width_bits + 32;; bits *= 2) {
        std::vector<BoxNumber> r;
        for (const auto& cl : clusters) r.emplace_back(refine(cl, bits).box, bits + 32);
        BoxNumber lambda = finite == 4 ? (r[0] - r[1]) * (r[2] - r[3]) / ((r[0] - r[2]) * (r[1] - r[3]))
                                       : (r[0] - r[1]) / (r[0] - r[2]);
        auto [n, d] = j_fraction(lambda, BoxNumber(Rat(1)));
        ComplexBox j = (n / d).box();
        if (j.width() <= target) return j;
        if (bits > 1u << 16) throw CertificationError("j_from_roots: no convergence");
    }
}

// --- the modular maps on lines ----------------------------------------------

/// j-invariant of the four points where the line meets the quartic.
inline Rat gamma(const RatLine& l, const PlaneQuartic& q)
{
    BinaryQuartic<Rat> f = restrict_to_line(q.form(), l);
    if (std::all_of(f.begin(), f.end(), [](const Rat& c) { return c == 0; }))
        throw std::invalid_argument("gamma: line is contained in the quartic");
    Profile p = classify(f);
    if (p == Profile::Flex || p == Profile::Hyperflex)
        throw UndefinedLocus(UndefinedLocus::Cause::Flex, "gamma: line has contact " + profile_name(p));
    if (p != Profile::Simple) throw UndefinedLocus(UndefinedLocus::Cause::Boundary, "gamma: line is tangent " + profile_name(p));
    return j_from_binary_quartic(f);
}

/// Invariant of (four points, marked point) on a line. The marked point is
/// encoded by an absolute invariant of the pair (binary quartic f, point p)
/// built from f(p), the Hessian covariant H(p) and I, J:
///   generic       mu = H(p) I / (f(p) J)          (kind 1)
///   J = 0         mu = H(p)^2 / (f(p)^2 I)        (kind 2)
///   I = 0         mu = H(p)^3 / (f(p)^3 J)        (kind 3)
/// Each is a quotient map of P^1 by the symmetry group of the four points,
/// so equal values mean projectively equivalent configurations.
struct PointedModulus {
    std::optional<Rat> j;  // empty when the four points are not distinct
    int kind = 1;
    std::optional<Rat> mu; // empty when p is one of the four points

    friend bool operator==(const PointedModulus&, const PointedModulus&) = default;
};

template <class T>
T binary_value(const BinaryQuartic<T>& f, const T& u, const T& v)
{
    // sum of f_i u^(4-i) v^i
    std::array<T, 5> up{u * Rat(1), u * u, u * u * u, u * u * u * u, u * Rat(1)};
    std::array<T, 5> vp{v * Rat(1), v * v, v * v * v, v * v * v * v, v * Rat(1)};
    T r = f[0] * up[3] + f[4] * vp[3];
    for (std::size_t i = 1; i < 4; ++i) r = r + f[i] * up[3 - i] * vp[i - 1];
    return r;
}

namespace detail {

// coordinates (u, v) of a point p = u B0 + v B1 on the line
inline std::pair<Rat, Rat> line_coordinates(const std::array<RatPoint, 2>& basis, const RatPoint& p)
{
    for (int i = 0; i < 3; ++i)
        for (int k = i + 1; k < 3; ++k) {
            Rat det = basis[0][i] * basis[1][k] - basis[0][k] * basis[1][i];
            if (det == 0) continue;
            Rat u = (p[i] * basis[1][k] - p[k] * basis[1][i]) / det;
            Rat v = (basis[0][i] * p[k] - basis[0][k] * p[i]) / det;
            return {u, v};
        }
    throw std::invalid_argument("line_coordinates: degenerate basis");
}

} // namespace detail

inline PointedModulus phi(const RatPoint& p, const RatLine& l, const PlaneQuartic& q)
{
    if (l[0] * p[0] + l[1] * p[1] + l[2] * p[2] != 0) throw std::invalid_argument("phi: point is not on the line");
    if (p[0] == 0 && p[1] == 0 && p[2] == 0) throw std::invalid_argument("phi: zero point");
    auto basis = line_basis(l);
    BinaryQuartic<Rat> f = restrict_to_line(q.form(), l);
    if (std::all_of(f.begin(), f.end(), [](const Rat& c) { return c == 0; }))
        throw std::invalid_argument("phi: line is contained in the quartic");
    Profile prof = classify(f);
    if (prof == Profile::Flex || prof == Profile::Hyperflex)
        throw UndefinedLocus(UndefinedLocus::Cause::Flex, "phi: line has contact " + profile_name(prof));
    auto [u, v] = detail::line_coordinates(basis, p);
    Rat fp = binary_value(f, u, v);
    if (fp == 0) {
        // double root at p?
        Rat du = f[0] * 4 * u * u * u + f[1] * 3 * u * u * v + f[2] * 2 * u * v * v + f[3] * v * v * v;
        Rat dv = f[1] * u * u * u + f[2] * 2 * u * u * v + f[3] * 3 * u * v * v + f[4] * 4 * v * v * v;
        if (du == 0 && dv == 0)
            throw UndefinedLocus(UndefinedLocus::Cause::TangencyPoint, "phi: the point coincides with the point of tangency");
    }
    Rat I = invariant_I(f), J = invariant_J(f);
    PointedModulus out;
    Rat den = I * I * I * 4 - J * J;
    if (den != 0) out.j = j_constant() * I * I * I / den;
    Rat hp = binary_value(hessian_covariant(f), u, v);
    if (I != 0 && J != 0) {
        out.kind = 1;
        if (fp != 0) out.mu = hp * I / (fp * J);
    } else if (J == 0) {
        out.kind = 2;
        if (fp != 0) out.mu = hp * hp / (fp * fp * I);
    } else {
        out.kind = 3;
        if (fp != 0) out.mu = hp * hp * hp / (fp * fp * fp * J);
    }
    return out;
}

} // namespace quartic

#pragma once

// Intersection arithmetic on P^2 x P^2: the ring Q[H1, H2]/(H1^3, H2^3),
// pushforward along the second projection, and the Grothendieck-Riemann-Roch
// computation of the first Chern class of the pushed-forward log tangent
// bundle over the universal line V = {(p, l) : p in l}, of class H1 + H2.

#include "rational.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

class ChowClass {
public:
    ChowClass() = default;
    ChowClass(const Rat& c) { c_[0][0] = c; }

    static ChowClass monomial(int a, int b, const Rat& c = Rat(1))
    {
        ChowClass r;
        if (a <= 2 && b <= 2) r.c_[a][b] = c;
        return r;
    }
    static ChowClass H1() { return monomial(1, 0); }
    static ChowClass H2() { return monomial(0, 1); }

    /// coefficient of H1^a H2^b
    const Rat& at(int a, int b) const { return c_[a][b]; }
    Rat& at(int a, int b) { return c_[a][b]; }

    /// part of total degree k
    ChowClass degree_part(int k) const
    {
        ChowClass r;
        for (int a = 0; a <= 2; ++a)
            if (k - a >= 0 && k - a <= 2) r.c_[a][k - a] = c_[a][k - a];
        return r;
    }

    friend ChowClass operator+(const ChowClass& x, const ChowClass& y)
    {
        ChowClass r;
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) r.c_[a][b] = x.c_[a][b] + y.c_[a][b];
        return r;
    }
    friend ChowClass operator-(const ChowClass& x, const ChowClass& y) { return x + y * Rat(-1); }
    friend ChowClass operator*(const ChowClass& x, const Rat& s)
    {
        ChowClass r;
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) r.c_[a][b] = x.c_[a][b] * s;
        return r;
    }
    friend ChowClass operator*(const ChowClass& x, const ChowClass& y)
    {
        ChowClass r;
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) {
                if (x.c_[a][b] == 0) continue;
                for (int c = 0; a + c <= 2; ++c)
                    for (int d = 0; b + d <= 2; ++d) r.c_[a + c][b + d] += x.c_[a][b] * y.c_[c][d];
            }
        return r;
    }
    friend bool operator==(const ChowClass& x, const ChowClass& y) { return x.c_ == y.c_; }

    std::string to_string() const
    {
        std::string s;
        for (int k = 0; k <= 4; ++k)
            for (int a = 2; a >= 0; --a) {
                int b = k - a;
                if (b < 0 || b > 2 || c_[a][b] == 0) continue;
                Rat c = c_[a][b];
                s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
                Rat m = abs(c);
                std::string mono;
                if (a) mono += a == 1 ? "H1" : "H1^2";
                if (b) mono += std::string(a ? "*" : "") + (b == 1 ? "H2" : "H2^2");
                if (mono.empty()) s += m.get_str();
                else s += (m == 1 ? "" : m.get_str() + "*") + mono;
            }
        return s.empty() ? "0" : s;
    }

private:
    std::array<std::array<Rat, 3>, 3> c_{};
};

inline ChowClass ring_multiply(const ChowClass& x, const ChowClass& y) { return x * y; }

/// Integration over the first factor: the coefficients of H1^2 H2^b, as a
/// class 1, H2, H2^2 on the dual plane.
inline std::array<Rat, 3> pushforward_eta(const ChowClass& x) { return {x.at(2, 0), x.at(2, 1), x.at(2, 2)}; }

/// Pushforward from V of a class restricted to it: multiply by [V] = H1 + H2,
/// then integrate over the first factor.
inline std::array<Rat, 3> pushforward_eta_from_V(const ChowClass& x)
{
    return pushforward_eta(x * (ChowClass::H1() + ChowClass::H2()));
}

/// Todd class of the relative tangent bundle of V over the dual plane, whose
/// first Chern class is -H2 + 2 H1: 1 + c1/2 + c1^2/12.
inline ChowClass todd_T_eta()
{
    ChowClass c1 = ChowClass::H2() * Rat(-1) + ChowClass::H1() * Rat(2);
    return ChowClass(1) + c1 * make_rat(1, 2) + c1 * c1 * make_rat(1, 12);
}

/// Chern character of the log tangent bundle of (P^2, quartic), pulled back
/// to V: 2 - H1 - 13/2 H1^2. Derived from 0 -> T(-log D) -> T -> O_D(D) -> 0
/// and the Euler sequence, with d = 4.
inline ChowClass ch_log_tangent(int d = 4)
{
    // ch(T) = 2 + 3H + 3/2 H^2, ch(O_D(D)) = ch(O(d)) - ch(O) = dH + d^2/2 H^2
    const ChowClass H = ChowClass::H1();
    ChowClass chT = ChowClass(2) + H * Rat(3) + H * H * make_rat(3, 2);
    ChowClass chD = H * Rat(d) + H * H * make_rat(d * d, 2);
    return chT - chD;
}

struct GrrLedger {
    ChowClass ch, td, product, times_V;
    std::array<Rat, 3> pushed; // on the dual plane: 1, H2, H2^2
    Rat rank;
    std::pair<Rat, Rat> c1; // (H1, H2) components
};

inline GrrLedger grr_first_chern(bool todd_first = false)
{
    GrrLedger g;
    g.ch = ch_log_tangent();
    g.td = todd_T_eta();
    g.product = todd_first ? g.td * g.ch : g.ch * g.td;
    g.times_V = g.product * (ChowClass::H1() + ChowClass::H2());
    g.pushed = pushforward_eta(g.times_V);
    g.rank = g.pushed[0];
    g.c1 = {Rat(0), g.pushed[1]};
    return g;
}

// --- curve classes and the degree inequality --------------------------------

/// (a, b) = (H1 . C, H2 . C): degree of the image in the plane and in the
/// dual plane.
struct CurveClass {
    long a = 0, b = 0;
};

/// -c1 . C for the divisor class c1 = (0, -7): the upper bound on the degree
/// of the relative tangent sheaf on C.
inline Rat degree_bound(const CurveClass& c, const std::pair<Rat, Rat>& c1 = {Rat(0), Rat(-7)})
{
    return -(c1.first * c.a + c1.second * c.b);
}

/// Candidate classes in V of lifts of curves with constant modulus: the
/// fiber of degree 12 and the reduced fibers of degree 6 and 4, with their
/// multisections.
inline std::vector<CurveClass> lifted_fiber_classes() { return {{18, 12}, {18, 6}, {18, 4}, {36, 12}, {54, 12}}; }

/// 2g - 2 + i - (d - (n + 1)) e, the degree of the log normal sheaf.
inline long log_normal_degree(long g, long i, long d, long n, long e) { return 2 * g - 2 + i - (d - (n + 1)) * e; }

inline long arithmetic_genus_plane(long deg)
{
    if (deg < 1) throw std::invalid_argument("arithmetic_genus_plane: degree must be positive");
    return (deg - 1) * (deg - 2) / 2;
}

} // namespace quartic

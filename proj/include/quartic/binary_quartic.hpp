#pragma once

// Invariants and covariants of binary quartics
//     f = a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4
// written generically over any commutative ring whose elements can be
// multiplied by rationals (Rat, Poly, number-field elements, ...).

#include "poly.hpp"
#include "rational.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartic {

template <class T>
using BinaryQuartic = std::array<T, 5>;

template <class T>
T invariant_I(const BinaryQuartic<T>& a)
{
    return a[0] * a[4] * Rat(12) - a[1] * a[3] * Rat(3) + a[2] * a[2];
}

template <class T>
T invariant_J(const BinaryQuartic<T>& a)
{
    return a[0] * a[2] * a[4] * Rat(72) + a[1] * a[2] * a[3] * Rat(9) - a[0] * a[3] * a[3] * Rat(27) -
           a[4] * a[1] * a[1] * Rat(27) - a[2] * a[2] * a[2] * Rat(2);
}

// Equals prod (r_i - r_j)^2 * a0^6 over root pairs when a0 != 0.
template <class T>
T binary_discriminant(const BinaryQuartic<T>& a)
{
    T i = invariant_I(a), j = invariant_J(a);
    return (i * i * i * Rat(4) - j * j) * make_rat(1, 27);
}

// j = 6912 I^3 / (4 I^3 - J^2) is the cross-ratio j-invariant
// 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2) of the four roots.
inline const Rat& j_constant()
{
    static const Rat c(6912);
    return c;
}

/// Hessian covariant f_xx f_yy - f_xy^2 (degree 4), same coefficient layout.
template <class T>
BinaryQuartic<T> hessian_covariant(const BinaryQuartic<T>& a)
{
    // f_xx = 12a0 x^2 + 6a1 xy + 2a2 y^2, f_yy = 2a2 x^2 + 6a3 xy + 12a4 y^2,
    // f_xy = 3a1 x^2 + 4a2 xy + 3a3 y^2
    std::array<T, 3> xx{a[0] * Rat(12), a[1] * Rat(6), a[2] * Rat(2)};
    std::array<T, 3> yy{a[2] * Rat(2), a[3] * Rat(6), a[4] * Rat(12)};
    std::array<T, 3> xy{a[1] * Rat(3), a[2] * Rat(4), a[3] * Rat(3)};
    BinaryQuartic<T> h{a[0] * Rat(0), a[0] * Rat(0), a[0] * Rat(0), a[0] * Rat(0), a[0] * Rat(0)};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) h[static_cast<std::size_t>(i + k)] = h[static_cast<std::size_t>(i + k)] + xx[i] * yy[k] - xy[i] * xy[k];
    return h;
}

/// Jacobian covariant f_x H_y - f_y H_x (degree 6), coefficients of
/// x^(6-i) y^i.
template <class T>
std::array<T, 7> sextic_covariant(const BinaryQuartic<T>& a)
{
    auto dx = [](const BinaryQuartic<T>& f) {
        return std::array<T, 4>{f[0] * Rat(4), f[1] * Rat(3), f[2] * Rat(2), f[3]};
    };
    auto dy = [](const BinaryQuartic<T>& f) {
        return std::array<T, 4>{f[1], f[2] * Rat(2), f[3] * Rat(3), f[4] * Rat(4)};
    };
    BinaryQuartic<T> h = hessian_covariant(a);
    auto fx = dx(a), fy = dy(a), hx = dx(h), hy = dy(h);
    std::array<T, 7> t;
    t.fill(a[0] * Rat(0));
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            t[static_cast<std::size_t>(i + k)] = t[static_cast<std::size_t>(i + k)] + fx[i] * hy[k] - fy[i] * hx[k];
    return t;
}

// Root multiplicities of a binary quartic, sorted descending.
enum class Profile { Simple, Tangent, Bitangent, Flex, Hyperflex };

inline std::vector<int> profile_orders(Profile p)
{
    switch (p) {
    case Profile::Simple: return {1, 1, 1, 1};
    case Profile::Tangent: return {2, 1, 1};
    case Profile::Bitangent: return {2, 2};
    case Profile::Flex: return {3, 1};
    case Profile::Hyperflex: return {4};
    }
    return {};
}

inline std::string profile_name(Profile p)
{
    std::string s = "{";
    for (int k : profile_orders(p)) s += (s.size() > 1 ? "," : "") + std::to_string(k);
    return s + "}";
}

/// Classification by covariants. `is_zero` decides vanishing in the
/// coefficient ring; the quartic must not be identically zero.
template <class T, class IsZero>
Profile classify(const BinaryQuartic<T>& a, IsZero is_zero)
{
    auto all_zero = [&](const auto& v) { return std::all_of(v.begin(), v.end(), is_zero); };
    if (all_zero(a)) throw std::domain_error("classify: zero binary form");
    if (all_zero(hessian_covariant(a))) return Profile::Hyperflex;
    if (all_zero(sextic_covariant(a))) return Profile::Bitangent;
    T i = invariant_I(a), j = invariant_J(a);
    if (is_zero(i) && is_zero(j)) return Profile::Flex;
    if (is_zero(binary_discriminant(a))) return Profile::Tangent;
    return Profile::Simple;
}

inline Profile classify(const BinaryQuartic<Rat>& a)
{
    return classify(a, [](const Rat& v) { return v == 0; });
}

/// Multiplicities of the roots of a rational binary quartic, computed
/// directly from the square-free decomposition (root at infinity included).
inline std::vector<int> root_multiplicities(const BinaryQuartic<Rat>& a)
{
    // dehomogenize at y = 1: coefficient of x^k is a[4 - k]
    std::vector<Rat> c(5);
    for (int k = 0; k <= 4; ++k) c[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(4 - k)];
    UPoly f(c);
    if (f.is_zero()) throw std::domain_error("root_multiplicities: zero binary form");
    std::vector<int> out;
    if (f.degree() < 4) out.push_back(4 - f.degree());
    for (const auto& [g, m] : squarefree_decomposition(f))
        for (int r = 0; r < g.degree(); ++r) out.push_back(m);
    std::sort(out.rbegin(), out.rend());
    return out;
}

} // namespace quartic

#pragma once

// Resultants, discriminants, gcds and square-free parts of sparse
// polynomials.
//
// Two routes compute resultants:
//  * resultant_prs: the subresultant PRS run directly over the coefficient
//    ring Q[other variables] (exact multivariate division at every step);
//  * eliminate: for bivariate input, evaluation at integer points of the
//    kept variable + the integer subresultant PRS + Newton interpolation.
// resultant() dispatches between them. sylvester_resultant() is the dense
// determinant definition and only serves as an oracle.

#include "linalg.hpp"
#include "poly.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quartic {

/// Exact quotient p / q; throws std::domain_error if q does not divide p.
inline Poly divide_exact(const Poly& p, const Poly& q)
{
    if (q.is_zero()) throw std::domain_error("divide_exact: division by zero");
    if (!same_context(p.vars(), q.vars())) throw ContextError("divide_exact: context mismatch");
    const auto& [qe, qc] = q.leading_term();
    Poly rem(p), quo(p.vars());
    const std::size_t n = p.nvars();
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading_term();
        Exponent e(n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i] = re[i] - qe[i];
            if (e[i] < 0) throw std::domain_error("divide_exact: non-zero remainder");
        }
        Poly t = Poly::monomial(p.vars(), rc / qc, std::move(e));
        quo += t;
        rem -= t * q;
    }
    return quo;
}

namespace detail {

using CoeffVec = std::vector<Poly>; // coefficients in the eliminated variable, low -> high

inline int deg(const CoeffVec& a)
{
    int d = static_cast<int>(a.size()) - 1;
    while (d >= 0 && a[static_cast<std::size_t>(d)].is_zero()) --d;
    return d;
}

inline void trim(CoeffVec& a)
{
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline CoeffVec pseudo_remainder(CoeffVec a, const CoeffVec& b)
{
    trim(a);
    const int db = deg(b);
    int d = deg(a) - db + 1;
    if (d <= 0) return a;
    const Poly& l = b[static_cast<std::size_t>(db)];
    while (deg(a) >= db) {
        Poly t = a.back();
        const int shift = deg(a) - db;
        for (auto& v : a) v = v * l;
        for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(shift + j)] -= t * b[static_cast<std::size_t>(j)];
        trim(a);
        --d;
    }
    if (d > 0) {
        Poly f = l.pow(static_cast<unsigned>(d));
        for (auto& v : a) v = v * f;
    }
    return a;
}

inline Poly assemble(const CoeffVec& a, std::size_t var)
{
    Poly r(a.empty() ? Poly().vars() : a[0].vars());
    if (a.empty()) return r;
    Poly v = Poly::variable(a[0].vars(), (*a[0].vars())[var]);
    Poly pw(a[0].vars(), Rat(1));
    for (const auto& c : a) {
        r += c * pw;
        pw *= v;
    }
    return r;
}

} // namespace detail

/// Resultant in `var` by the subresultant PRS over Q[other variables].
inline Poly resultant_prs(const Poly& p, const Poly& q, std::size_t var)
{
    if (!same_context(p.vars(), q.vars())) throw ContextError("resultant: context mismatch");
    using detail::deg;
    detail::CoeffVec a = p.coefficients_in(var), b = q.coefficients_in(var);
    const Vars& vars = p.vars();
    if (deg(a) < 0 || deg(b) < 0) return Poly(vars);
    if (deg(b) == 0) return b[0].pow(static_cast<unsigned>(deg(a)));
    if (deg(a) == 0) return a[0].pow(static_cast<unsigned>(deg(b)));
    Poly g(vars, Rat(1)), h(vars, Rat(1));
    int s = 1;
    if (deg(a) < deg(b)) {
        std::swap(a, b);
        if ((deg(a) & 1) && (deg(b) & 1)) s = -1;
    }
    for (;;) {
        const int delta = deg(a) - deg(b);
        if ((deg(a) & 1) && (deg(b) & 1)) s = -s;
        detail::CoeffVec r = detail::pseudo_remainder(a, b);
        a = std::move(b);
        Poly div = g * h.pow(static_cast<unsigned>(delta));
        for (auto& v : r) v = divide_exact(v, div);
        b = std::move(r);
        g = a[static_cast<std::size_t>(deg(a))];
        if (delta == 1) h = g;
        else if (delta > 1) h = divide_exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        if (deg(b) < 0) return Poly(vars);
        if (deg(b) > 0) continue;
        const int da = deg(a);
        Poly num = b[0].pow(static_cast<unsigned>(da));
        if (da > 1) num = divide_exact(num, h.pow(static_cast<unsigned>(da - 1)));
        return num * Rat(s);
    }
}

/// Fraction-free determinant of a square matrix of polynomials.
inline Poly determinant(std::vector<std::vector<Poly>> m, const Vars& vars)
{
    const std::size_t n = m.size();
    if (n == 0) return Poly(vars, Rat(1));
    int sign = 1;
    Poly prev(vars, Rat(1));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].is_zero()) ++p;
        if (p == n) return Poly(vars);
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = Poly(vars);
        }
        prev = m[k][k];
    }
    return m[n - 1][n - 1] * Rat(sign);
}

/// Sylvester matrix of p, q in `var` (actual degrees).
inline std::vector<std::vector<Poly>> sylvester_matrix(const Poly& p, const Poly& q, std::size_t var)
{
    auto a = p.coefficients_in(var), b = q.coefficients_in(var);
    const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Poly>> rows;
    for (int k = n - 1; k >= 0; --k) {
        std::vector<Poly> row(size, Poly(p.vars()));
        for (int e = 0; e <= m; ++e) row[size - 1 - static_cast<std::size_t>(e + k)] = a[static_cast<std::size_t>(e)];
        rows.push_back(std::move(row));
    }
    for (int k = m - 1; k >= 0; --k) {
        std::vector<Poly> row(size, Poly(p.vars()));
        for (int e = 0; e <= n; ++e) row[size - 1 - static_cast<std::size_t>(e + k)] = b[static_cast<std::size_t>(e)];
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Poly sylvester_resultant(const Poly& p, const Poly& q, std::size_t var)
{
    if (p.degree(var) < 0 || q.degree(var) < 0) return Poly(p.vars());
    return determinant(sylvester_matrix(p, q, var), p.vars());
}

// --- bivariate elimination by evaluation / interpolation --------------------

struct Elimination {
    UPoly resultant;              // in the kept variable
    UPoly s1_linear, s1_constant; // first subresultant S1 = s1_linear * T + s1_constant
    bool has_s1 = false;
    std::size_t evaluations = 0;
};

namespace detail {

/// p as a polynomial in `elim` whose coefficients are integer univariate
/// polynomials in `keep`. Requires p to involve no other variable.
inline std::vector<IntPoly> split_integer(const Poly& p, std::size_t elim, std::size_t keep)
{
    std::vector<IntPoly> out(static_cast<std::size_t>(std::max(p.degree(elim), -1) + 1));
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != elim && i != keep && e[i] != 0) throw ContextError("eliminate: input is not bivariate in the given variables");
        if (c.get_den() != 1) throw std::logic_error("split_integer: expects integer coefficients");
        auto& slot = out[static_cast<std::size_t>(e[elim])];
        const auto k = static_cast<std::size_t>(e[keep]);
        if (slot.size() <= k) slot.resize(k + 1, Int(0));
        slot[k] = c.get_num();
    }
    return out;
}

inline Int eval_int(const IntPoly& p, const Int& x)
{
    Int acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline Rat primitive_scale(const Poly& p)
{
    // p == scale * p.primitive()
    const Poly pp = p.primitive();
    return p.leading_term().second / pp.leading_term().second;
}

} // namespace detail

/// Resultant (and optionally the first subresultant) of bivariate p, q with
/// respect to `elim`, as polynomials in `keep`.
inline Elimination eliminate(const Poly& p, const Poly& q, std::size_t elim, std::size_t keep, bool with_s1 = false)
{
    if (!same_context(p.vars(), q.vars())) throw ContextError("eliminate: context mismatch");
    const int m = p.degree(elim), n = q.degree(elim);
    if (m < 1 || n < 1) throw std::invalid_argument("eliminate: inputs need positive degree in the eliminated variable");
    const Poly pp = p.primitive(), qq = q.primitive();
    const Rat sp = detail::primitive_scale(p), sq = detail::primitive_scale(q);
    const auto pc = detail::split_integer(pp, elim, keep);
    const auto qc = detail::split_integer(qq, elim, keep);
    const int dp = std::max(p.degree(keep), 0), dq = std::max(q.degree(keep), 0);
    int bound = std::min(n * dp + m * dq, std::max(p.total_degree(), 0) * std::max(q.total_degree(), 0));
    const bool s1 = with_s1 && std::min(m, n) >= 2;
    const int bound_s1 = s1 ? (n - 1) * dp + (m - 1) * dq : 0;
    const int points = std::max(bound, bound_s1) + 1;

    std::vector<Rat> xs, res_vals, s1a, s1b;
    Elimination out;
    long k = 0;
    while (static_cast<int>(xs.size()) < points) {
        const Int x(k > 0 ? (k + 1) / 2 * ((k & 1) ? 1 : -1) : 0); // 0, 1, -1, 2, -2, ...
        ++k;
        IntPoly a(pc.size()), b(qc.size());
        for (std::size_t i = 0; i < pc.size(); ++i) a[i] = detail::eval_int(pc[i], x);
        for (std::size_t i = 0; i < qc.size(); ++i) b[i] = detail::eval_int(qc[i], x);
        if (a.back() == 0 || b.back() == 0) continue; // degree drop: not a faithful specialization
        ++out.evaluations;
        xs.emplace_back(x);
        res_vals.emplace_back(resultant(a, b));
        if (s1) {
            auto c = subresultant(a, m, b, n, 1);
            s1b.emplace_back(c[0]);
            s1a.emplace_back(c[1]);
        }
    }
    // Only the first bound+1 points are needed for the resultant.
    std::vector<Rat> xr(xs.begin(), xs.begin() + bound + 1), vr(res_vals.begin(), res_vals.begin() + bound + 1);
    out.resultant = interpolate(xr, vr) * (pow(sp, static_cast<unsigned>(n)) * pow(sq, static_cast<unsigned>(m)));
    if (s1) {
        const Rat scale = pow(sp, static_cast<unsigned>(n - 1)) * pow(sq, static_cast<unsigned>(m - 1));
        std::vector<Rat> x1(xs.begin(), xs.begin() + bound_s1 + 1);
        out.s1_linear = interpolate(x1, std::vector<Rat>(s1a.begin(), s1a.begin() + bound_s1 + 1)) * scale;
        out.s1_constant = interpolate(x1, std::vector<Rat>(s1b.begin(), s1b.begin() + bound_s1 + 1)) * scale;
        out.has_s1 = true;
    }
    return out;
}

/// Variables actually occurring in p.
inline std::vector<std::size_t> support_vars(const Poly& p)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.nvars(); ++i)
        if (p.degree(i) > 0) out.push_back(i);
    return out;
}

/// res_var(p, q). Bivariate inputs go through evaluation/interpolation,
/// everything else through the subresultant PRS.
inline Poly resultant(const Poly& p, const Poly& q, std::size_t var)
{
    if (!same_context(p.vars(), q.vars())) throw ContextError("resultant: context mismatch");
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant: zero input");
    if (p.degree(var) < 1 || q.degree(var) < 1) throw std::invalid_argument("resultant: input of degree zero in the eliminated variable");
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < p.nvars(); ++i)
        if (i != var && (p.degree(i) > 0 || q.degree(i) > 0)) others.push_back(i);
    if (others.size() == 1) {
        auto e = eliminate(p, q, var, others[0]);
        return Poly::from_upoly(p.vars(), (*p.vars())[others[0]], e.resultant);
    }
    return resultant_prs(p, q, var);
}

inline Poly resultant(const Poly& p, const Poly& q, const std::string& var) { return resultant(p, q, p.index_of(var)); }

/// disc_v(p) = (-1)^(n(n-1)/2) res_v(p, dp/dv) / lc_v(p), n = deg_v p.
/// With this sign, disc_x(x^2 + b x + c) = b^2 - 4c.
inline Poly discriminant(const Poly& p, std::size_t var)
{
    const int n = p.degree(var);
    if (n < 2) throw std::invalid_argument("discriminant: degree < 2 in the variable");
    Poly r = resultant(p, p.derivative(var), var);
    Poly lc = p.coefficients_in(var)[static_cast<std::size_t>(n)];
    Poly d = divide_exact(r, lc);
    if ((n * (n - 1) / 2) & 1) d = -d;
    return d;
}

inline Poly discriminant(const Poly& p, const std::string& var) { return discriminant(p, p.index_of(var)); }

// --- gcd and square-free parts -------------------------------------------------

Poly gcd(const Poly& p, const Poly& q);

namespace detail {

inline Poly content_in(const Poly& p, std::size_t var)
{
    Poly g(p.vars());
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

inline CoeffVec primitive_in(const CoeffVec& a, std::size_t var)
{
    Poly c = content_in(assemble(a, var), var);
    CoeffVec out;
    for (const auto& v : a) out.push_back(divide_exact(v, c));
    return out;
}

} // namespace detail

/// gcd over Q, normalized to an integer primitive polynomial with positive
/// leading coefficient (1 for coprime inputs, 0 only for two zero inputs).
inline Poly gcd(const Poly& p, const Poly& q)
{
    if (!same_context(p.vars(), q.vars())) throw ContextError("gcd: context mismatch");
    if (p.is_zero()) return q.primitive();
    if (q.is_zero()) return p.primitive();
    if (p.is_constant() || q.is_constant()) return Poly(p.vars(), Rat(1));
    std::size_t var = p.nvars();
    for (std::size_t i = p.nvars(); i-- > 0;)
        if (p.degree(i) > 0 || q.degree(i) > 0) {
            var = i;
            break;
        }
    if (p.degree(var) <= 0) return gcd(p, detail::content_in(q, var));
    if (q.degree(var) <= 0) return gcd(detail::content_in(p, var), q);
    Poly cp = detail::content_in(p, var), cq = detail::content_in(q, var);
    Poly cg = gcd(cp, cq);
    detail::CoeffVec a = p.coefficients_in(var), b = q.coefficients_in(var);
    for (auto& v : a) v = divide_exact(v, cp);
    for (auto& v : b) v = divide_exact(v, cq);
    if (detail::deg(a) < detail::deg(b)) std::swap(a, b);
    while (detail::deg(b) >= 0) {
        detail::CoeffVec r = detail::pseudo_remainder(a, b);
        a = std::move(b);
        if (detail::deg(r) < 0) {
            b.clear();
            break;
        }
        b = detail::primitive_in(r, var);
    }
    if (detail::deg(a) == 0) return cg.primitive();
    return (detail::assemble(detail::primitive_in(a, var), var) * cg).primitive();
}

/// p / gcd(p, dp/dv), content normalized.
inline Poly squarefree_part(const Poly& p, std::size_t var)
{
    if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    if (p.degree(var) <= 0) return p.primitive();
    return divide_exact(p, gcd(p, p.derivative(var))).primitive();
}

inline Poly squarefree_part(const Poly& p, const std::string& var) { return squarefree_part(p, p.index_of(var)); }

/// Reduced polynomial: p / gcd(p, all partials). Removes repeated factors in
/// every variable, including pure-content factors.
inline Poly squarefree_part(const Poly& p)
{
    if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    Poly g = p;
    for (std::size_t i = 0; i < p.nvars(); ++i)
        if (p.degree(i) > 0) g = gcd(g, p.derivative(i));
    return divide_exact(p, g).primitive();
}

/// Cheap exact proof that a bivariate p is square-free: its content with
/// respect to `var` is constant and some integer specialization of the other
/// variable keeps the degree in `var` and is square-free. False means "not
/// proven", not "has a repeated factor".
inline bool proven_squarefree(const Poly& p, std::size_t var, int tries = 8)
{
    auto others = support_vars(p);
    std::erase(others, var);
    if (others.size() > 1) return false;
    if (others.empty()) {
        UPoly u = p.to_upoly(var);
        return squarefree_part(u).degree() == u.degree();
    }
    const std::size_t o = others[0];
    const auto coeffs = p.coefficients_in(var);
    UPoly content;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        UPoly u = c.specialize(var, Rat(0)).to_upoly(o);
        content = content.is_zero() ? u : gcd(content, u);
    }
    if (content.degree() > 0) return false;
    const int n = p.degree(var);
    for (int k = 0; k < tries; ++k) {
        Rat v(k % 2 ? (k + 1) / 2 : -(k / 2) - 3);
        UPoly u = p.specialize(o, v).to_upoly(var);
        if (u.degree() != n) continue;
        if (squarefree_part(u).degree() == n) return true;
    }
    return false;
}

/// Square-free part, skipping the gcd when square-freeness is provable.
inline Poly squarefree_part_fast(const Poly& p)
{
    auto vars = support_vars(p);
    if (vars.size() == 2 && proven_squarefree(p, vars[1])) return p.primitive();
    return squarefree_part(p);
}

} // namespace quartic

#pragma once

// Dense univariate polynomials over Q, plus the integer kernels (pseudo
// remainders, subresultant resultants, determinantal subresultants) that the
// elimination code runs at every evaluation point.

#include "linalg.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

using IntPoly = std::vector<Int>; // low -> high, no trailing zeros

class UPoly {
public:
    UPoly() = default;
    UPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
    explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit UPoly(const IntPoly& coeffs) : c_(coeffs.begin(), coeffs.end()) { trim(); }

    static UPoly constant(const Rat& v) { return UPoly(std::vector<Rat>{v}); }
    static UPoly monomial(const Rat& v, std::size_t e)
    {
        std::vector<Rat> c(e + 1, Rat(0));
        c[e] = v;
        return UPoly(std::move(c));
    }
    /// x - r
    static UPoly linear_root(const Rat& r) { return UPoly{-r, Rat(1)}; }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Rat& lc() const
    {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat operator()(const Rat& x) const
    {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UPoly operator-() const
    {
        UPoly r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }
    UPoly& operator+=(const UPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator*=(const Rat& s)
    {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(UPoly a, const Rat& s) { return a *= s; }
    friend UPoly operator*(const Rat& s, UPoly a) { return a *= s; }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    /// Quotient and remainder over Q.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const
    {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        if (degree() < d.degree()) return {UPoly{}, *this};
        std::vector<Rat> rem(c_);
        std::vector<Rat> quo(c_.size() - d.c_.size() + 1, Rat(0));
        const Rat inv = 1 / d.lc();
        const std::size_t dd = d.c_.size() - 1;
        for (std::size_t k = quo.size(); k-- > 0;) {
            Rat q = rem[k + dd] * inv;
            if (q == 0) continue;
            quo[k] = q;
            for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * d.c_[j];
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }
    /// Exact quotient; throws if `d` does not divide.
    UPoly exact_div(const UPoly& d) const
    {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw std::domain_error("UPoly::exact_div: non-zero remainder");
        return q;
    }

    UPoly derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
        return UPoly(std::move(r));
    }

    UPoly monic() const
    {
        if (is_zero()) return {};
        return *this * (1 / lc());
    }

    std::string to_string(const std::string& var = "x") const
    {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            Rat v = c_[i];
            if (!first) os << (v < 0 ? " - " : " + ");
            else if (v < 0) os << "-";
            first = false;
            Rat a = abs(v);
            os << a.get_str();
            if (i >= 1) os << "*" << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.to_string(); }

/// Evaluation in any commutative ring constructible from a Rat.
template <class T>
T evaluate(const UPoly& p, const T& x)
{
    T acc(Rat(0));
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + T(*it);
    return acc;
}

// --- integer kernels -------------------------------------------------------

inline void trim(IntPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Int content(const IntPoly& p)
{
    Int g(0);
    for (const auto& v : p) {
        g = gcd(g, v);
        if (g == 1) break;
    }
    return g;
}

inline IntPoly primitive_part(IntPoly p)
{
    Int g = content(p);
    if (g == 0) return p;
    if (p.back() < 0) g = -g;
    for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return p;
}

/// p = scale * ints with ints having integer coefficients and content 1
/// (positive leading coefficient).
inline std::pair<IntPoly, Rat> to_primitive_int(const UPoly& p)
{
    if (p.is_zero()) return {IntPoly{}, Rat(0)};
    Int den(1);
    for (const auto& v : p.coeffs()) den = lcm(den, v.get_den());
    IntPoly ints;
    ints.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) ints.push_back(v.get_num() * (den / v.get_den()));
    Int g = content(ints);
    if (ints.back() < 0) g = -g;
    for (auto& v : ints) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return {std::move(ints), make_rat(g, den)};
}

/// Integer multiple of p with content 1 and positive leading coefficient.
inline UPoly primitive(const UPoly& p) { return UPoly(to_primitive_int(p).first); }

/// lc(b)^(deg a - deg b + 1) * a  mod  b, over Z.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b)
{
    const int db = degree(b);
    if (db < 0) throw std::domain_error("pseudo_remainder by zero");
    int d = degree(a) - db + 1;
    if (d <= 0) return a;
    const Int& l = b.back();
    while (degree(a) >= db) {
        Int t = a.back();
        const int shift = degree(a) - db;
        for (auto& v : a) v *= l;
        for (int j = 0; j <= db; ++j) a[shift + j] -= t * b[j];
        trim(a);
        --d;
    }
    if (d > 0) {
        Int f = ipow(l, static_cast<unsigned>(d));
        for (auto& v : a) v *= f;
    }
    return a;
}

/// Resultant over Z by the subresultant PRS (Cohen, Alg. 3.3.7).
inline Int resultant(IntPoly a, IntPoly b)
{
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return Int(0);
    if (degree(b) == 0) return ipow(b[0], static_cast<unsigned>(degree(a)));
    if (degree(a) == 0) return ipow(a[0], static_cast<unsigned>(degree(b)));
    Int ca = content(a), cb = content(b);
    for (auto& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), ca.get_mpz_t());
    for (auto& v : b) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), cb.get_mpz_t());
    Int g(1), h(1);
    int s = 1;
    Int t = ipow(ca, static_cast<unsigned>(degree(b))) * ipow(cb, static_cast<unsigned>(degree(a)));
    if (degree(a) < degree(b)) {
        std::swap(a, b);
        if ((degree(a) & 1) && (degree(b) & 1)) s = -1;
    }
    for (;;) {
        const int delta = degree(a) - degree(b);
        if ((degree(a) & 1) && (degree(b) & 1)) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        Int div = g * ipow(h, static_cast<unsigned>(delta));
        for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), div.get_mpz_t());
        b = std::move(r);
        g = a.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            Int num = ipow(g, static_cast<unsigned>(delta));
            Int den = ipow(h, static_cast<unsigned>(delta - 1));
            mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            h = std::move(num);
        }
        if (b.empty()) return Int(0);
        if (degree(b) > 0) continue;
        const int da = degree(a);
        Int num = ipow(b[0], static_cast<unsigned>(da));
        if (da > 1) {
            Int den = ipow(h, static_cast<unsigned>(da - 1));
            mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        return s * t * num;
    }
}

/// Rows of the Sylvester-type matrix for the j-th subresultant with formal
/// degrees m = |a|-1, n = |b|-1 (leading zeros allowed).
inline IntMatrix sylvester_rows(const IntPoly& a, int m, const IntPoly& b, int n, int j)
{
    const int cols = m + n - j;
    IntMatrix rows;
    auto coeff = [](const IntPoly& p, int e) { return e >= 0 && e < static_cast<int>(p.size()) ? p[e] : Int(0); };
    for (int k = n - j - 1; k >= 0; --k) {
        std::vector<Int> row(cols, Int(0));
        for (int e = 0; e <= m; ++e) row[cols - 1 - (e + k)] = coeff(a, e);
        rows.push_back(std::move(row));
    }
    for (int k = m - j - 1; k >= 0; --k) {
        std::vector<Int> row(cols, Int(0));
        for (int e = 0; e <= n; ++e) row[cols - 1 - (e + k)] = coeff(b, e);
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Determinantal j-th subresultant of a, b with formal degrees m, n.
/// Returns the coefficients of S_j (low -> high, length j+1, untrimmed).
inline std::vector<Int> subresultant(const IntPoly& a, int m, const IntPoly& b, int n, int j)
{
    if (j < 0 || j >= std::min(m, n)) throw std::invalid_argument("subresultant: index out of range");
    IntMatrix rows = sylvester_rows(a, m, b, n, j);
    const std::size_t size = static_cast<std::size_t>(m + n - 2 * j);
    int sign = 1;
    std::vector<Int> out(static_cast<std::size_t>(j + 1), Int(0));
    if (!bareiss_last_row(rows, size - 1, sign)) return out;
    // columns size-1 .. end hold x^j .. x^0
    for (int e = 0; e <= j; ++e) out[e] = sign * rows[size - 1][size - 1 + (j - e)];
    return out;
}

/// Dense Sylvester determinant; kept as the independent resultant oracle.
inline Int sylvester_resultant(const IntPoly& a, int m, const IntPoly& b, int n)
{
    return determinant(sylvester_rows(a, m, b, n, 0));
}

// --- rational front ends ----------------------------------------------------

/// Resultant over Q with actual degrees.
inline Rat resultant(const UPoly& p, const UPoly& q)
{
    if (p.is_zero() || q.is_zero()) return Rat(0);
    auto [pi, ps] = to_primitive_int(p);
    auto [qi, qs] = to_primitive_int(q);
    Rat scale = pow(ps, static_cast<unsigned>(q.degree())) * pow(qs, static_cast<unsigned>(p.degree()));
    return Rat(resultant(std::move(pi), std::move(qi))) * scale;
}

/// Monic gcd over Q (zero if both are zero).
inline UPoly gcd(const UPoly& p, const UPoly& q)
{
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    IntPoly a = to_primitive_int(p).first, b = to_primitive_int(q).first;
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.empty() ? r : primitive_part(std::move(r));
    }
    return UPoly(a).monic();
}

inline UPoly squarefree_part(const UPoly& p)
{
    if (p.is_zero()) throw std::domain_error("squarefree_part of zero polynomial");
    if (p.degree() <= 0) return UPoly::constant(1);
    return primitive(p.exact_div(gcd(p, p.derivative())));
}

/// Yun's algorithm: p = c * prod f_i^i, returns the non-constant (f_i, i),
/// each f_i primitive and squarefree, pairwise coprime.
inline std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p)
{
    if (p.is_zero()) throw std::domain_error("squarefree_decomposition of zero polynomial");
    std::vector<std::pair<UPoly, int>> out;
    if (p.degree() <= 0) return out;
    UPoly dp = p.derivative();
    UPoly a = gcd(p, dp);
    UPoly b = p.exact_div(a);
    UPoly c = dp.exact_div(a);
    UPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        UPoly f = gcd(b, d);
        if (f.degree() > 0) out.emplace_back(primitive(f), i);
        b = b.exact_div(f);
        c = d.exact_div(f);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline UPoly pow(const UPoly& p, unsigned e)
{
    UPoly r = UPoly::constant(1), b = p;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

/// Newton interpolation through (xs[i], ys[i]); xs pairwise distinct.
inline UPoly interpolate(const std::vector<Rat>& xs, std::vector<Rat> ys)
{
    const std::size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("interpolate: size mismatch");
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) {
            ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - k]);
            if (i == k) break;
        }
    UPoly acc;
    for (std::size_t k = n; k-- > 0;) {
        acc = acc * UPoly{-xs[k], Rat(1)};
        acc += UPoly::constant(ys[k]);
    }
    return acc;
}

} // namespace quartic

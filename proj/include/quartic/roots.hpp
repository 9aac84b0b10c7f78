#pragma once

// Certified complex root isolation for exact univariate polynomials.
//
// Multiplicities come from the square-free decomposition; numerics only
// locate the roots of each square-free factor. Real-rooted factors are
// handled with Sturm sequences. Everything else goes through Aberth
// iteration in floating point, and the result is certified exactly in
// Gaussian rationals: with W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j)),
// the disks D(z_i, n |W_i|) cover the roots and each connected component of
// k disks holds exactly k roots. Pairwise disjoint disks therefore hold one
// root each.

#include "rational.hpp"
#include "upoly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ComplexBox {
    Rat re_lo, re_hi, im_lo, im_hi;

    static ComplexBox point(const Rat& re, const Rat& im = Rat(0)) { return {re, re, im, im}; }

    Rat width() const { return std::max(re_hi - re_lo, im_hi - im_lo); }
    Rat center_re() const { return (re_lo + re_hi) / 2; }
    Rat center_im() const { return (im_lo + im_hi) / 2; }
    bool valid() const { return re_lo <= re_hi && im_lo <= im_hi; }

    bool contains(const Rat& re, const Rat& im = Rat(0)) const
    {
        return re_lo <= re && re <= re_hi && im_lo <= im && im <= im_hi;
    }
    bool contains(const ComplexBox& o) const
    {
        return re_lo <= o.re_lo && o.re_hi <= re_hi && im_lo <= o.im_lo && o.im_hi <= im_hi;
    }
    // closed boxes
    bool intersects(const ComplexBox& o) const
    {
        return !(re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo);
    }
    ComplexBox intersection(const ComplexBox& o) const
    {
        return {std::max(re_lo, o.re_lo), std::min(re_hi, o.re_hi), std::max(im_lo, o.im_lo),
                std::min(im_hi, o.im_hi)};
    }
    // split across the longer side
    std::pair<ComplexBox, ComplexBox> bisect() const
    {
        ComplexBox a = *this, b = *this;
        if (re_hi - re_lo >= im_hi - im_lo) {
            a.re_hi = b.re_lo = center_re();
        } else {
            a.im_hi = b.im_lo = center_im();
        }
        return {a, b};
    }
    bool operator==(const ComplexBox&) const = default;
};

struct RootCluster {
    ComplexBox box;
    int multiplicity = 1;
    int squarefree_level = 0;          // index into the square-free decomposition
    std::shared_ptr<const UPoly> factor; // square-free factor with exactly one root in box
    bool real = false;                 // root proven real (box is a real interval)
};

struct RootOptions {
    unsigned precision = 128;
    unsigned max_precision = 16384;
};

namespace detail {

// Gaussian rationals, exact.
struct GQ {
    Rat re, im;
    GQ operator+(const GQ& o) const { return {re + o.re, im + o.im}; }
    GQ operator-(const GQ& o) const { return {re - o.re, im - o.im}; }
    GQ operator*(const GQ& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Rat norm() const { return re * re + im * im; }
};

// Complex floats at a fixed precision.
struct CF {
    mpf_class re, im;
    explicit CF(unsigned prec) : re(0, prec), im(0, prec) {}
    CF(const mpf_class& r, const mpf_class& i, unsigned prec) : re(r, prec), im(i, prec) {}
};

inline unsigned prec_of(const CF& z) { return static_cast<unsigned>(z.re.get_prec()); }

inline CF cmul(const CF& a, const CF& b)
{
    unsigned p = prec_of(a);
    CF r(p);
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

inline CF cdiv(const CF& a, const CF& b)
{
    unsigned p = prec_of(a);
    mpf_class d(b.re * b.re + b.im * b.im, p);
    CF r(p);
    r.re = (a.re * b.re + a.im * b.im) / d;
    r.im = (a.im * b.re - a.re * b.im) / d;
    return r;
}

inline mpf_class cabs2(const CF& a)
{
    mpf_class r(a.re * a.re + a.im * a.im, a.re.get_prec());
    return r;
}

inline Rat exact(const mpf_class& f)
{
    Rat q;
    mpq_set_f(q.get_mpq_t(), f.get_mpf_t());
    return q;
}

inline GQ exact(const CF& z) { return {exact(z.re), exact(z.im)}; }

// Rational r >= sqrt(x), x >= 0, reasonably tight.
inline Rat sqrt_upper(const Rat& x)
{
    if (x == 0) return Rat(0);
    mpf_class f(x, 128);
    mpf_class s(0, 128);
    mpf_sqrt(s.get_mpf_t(), f.get_mpf_t());
    Rat r = exact(s) * make_rat((1L << 30) + 1, 1L << 30);
    while (r * r < x) r *= 2;
    return r;
}

// Cauchy bound: every root satisfies |z| < bound.
inline Rat root_bound(const UPoly& p)
{
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rat(abs(p.coeff(static_cast<std::size_t>(i)) / p.lc())));
    return m + 1;
}

// --- Sturm path ----------------------------------------------------------

// Positive rescaling keeps Sturm sign sequences unchanged.
inline UPoly positive_primitive(const UPoly& p)
{
    auto [ints, scale] = to_primitive_int(p);
    UPoly q(ints);
    if (scale < 0) q = -q;
    return q;
}

inline std::vector<UPoly> sturm_sequence(const UPoly& p)
{
    std::vector<UPoly> s{positive_primitive(p), positive_primitive(p.derivative())};
    while (s.back().degree() > 0) {
        UPoly r = -(s[s.size() - 2] % s.back());
        if (r.is_zero()) break;
        s.push_back(positive_primitive(r));
    }
    return s;
}

inline int sign_changes(const std::vector<UPoly>& seq, const Rat& x)
{
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        int s = sgn(q(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// Number of distinct real roots in (a, b].
inline int sturm_count(const std::vector<UPoly>& seq, const Rat& a, const Rat& b)
{
    return sign_changes(seq, a) - sign_changes(seq, b);
}

// A non-root near the middle of (a, b).
inline Rat split_point(const UPoly& p, const Rat& a, const Rat& b)
{
    Rat m = (a + b) / 2, step = (b - a) / 8;
    for (int k = 0; p(m) == 0; ++k) {
        m = (a + b) / 2 + ((k % 2) ? step : -step);
        step /= 2;
    }
    return m;
}

// Shrinks an interval [a, b] with non-root endpoints and exactly one simple
// root inside to a strictly smaller one around the same root.
inline std::pair<Rat, Rat> pull_in(const UPoly& p, const Rat& a, const Rat& b)
{
    int sa = sgn(p(a)), sb = sgn(p(b));
    Rat lo = a, hi = b;
    for (Rat step = (b - a) / 4;; step /= 2) {
        Rat c = a + step;
        if (sgn(p(c)) == sa) {
            lo = c;
            break;
        }
    }
    for (Rat step = (b - a) / 4;; step /= 2) {
        Rat c = b - step;
        if (sgn(p(c)) == sb) {
            hi = c;
            break;
        }
    }
    return {lo, hi};
}

// Only for square-free p with all roots real.
inline std::vector<ComplexBox> isolate_real_sturm(const UPoly& p, const std::vector<UPoly>& seq)
{
    Rat b = root_bound(p);
    std::vector<ComplexBox> out;
    std::vector<std::pair<Rat, Rat>> stack{{-b, b}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = sturm_count(seq, lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            auto [l, h] = pull_in(p, lo, hi);
            out.push_back({l, h, Rat(0), Rat(0)});
            continue;
        }
        Rat m = split_point(p, lo, hi);
        stack.emplace_back(lo, m);
        stack.emplace_back(m, hi);
    }
    return out;
}

// --- Aberth path ---------------------------------------------------------

struct Approx {
    std::vector<CF> z;
};

inline CF horner(const std::vector<mpf_class>& c, const CF& z)
{
    unsigned p = prec_of(z);
    CF acc(p);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = cmul(acc, z);
        acc.re += c[i];
    }
    return acc;
}

inline void aberth(const UPoly& p, std::vector<CF>& z, unsigned prec)
{
    const int n = p.degree();
    std::vector<mpf_class> c, dc;
    for (const auto& v : p.coeffs()) c.emplace_back(v, prec);
    UPoly dp = p.derivative();
    for (const auto& v : dp.coeffs()) dc.emplace_back(v, prec);

    mpf_class tol(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), 2 * (prec - 8)); // squared tolerance
    const int max_iter = 200 + 20 * n;
    for (int it = 0; it < max_iter; ++it) {
        bool done = true;
        for (int i = 0; i < n; ++i) {
            CF f = horner(c, z[i]), df = horner(dc, z[i]);
            if (f.re == 0 && f.im == 0) continue;
            if (df.re == 0 && df.im == 0) {
                // nudge off a critical point
                z[i].re += mpf_class(1e-3, prec);
                done = false;
                continue;
            }
            CF w = cdiv(f, df);
            CF sum(prec);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                CF d(z[i].re - z[j].re, z[i].im - z[j].im, prec);
                if (d.re == 0 && d.im == 0) continue;
                CF one(mpf_class(1, prec), mpf_class(0, prec), prec);
                CF inv = cdiv(one, d);
                sum.re += inv.re;
                sum.im += inv.im;
            }
            CF ws = cmul(w, sum);
            CF denom(1 - ws.re, -ws.im, prec);
            CF step = (denom.re == 0 && denom.im == 0) ? w : cdiv(w, denom);
            z[i].re -= step.re;
            z[i].im -= step.im;
            mpf_class scale = cabs2(z[i]);
            if (scale < 1) scale = 1;
            if (cabs2(step) > tol * scale) done = false;
        }
        if (done) return;
    }
}

inline std::vector<CF> initial_guesses(const UPoly& p, unsigned prec)
{
    const int n = p.degree();
    double r = root_bound(p).get_d();
    // geometric mean of root moduli is a better radius than the bound
    double gm = std::pow(std::abs(Rat(p.coeff(0) / p.lc()).get_d()), 1.0 / n);
    if (std::isfinite(gm) && gm > 0 && gm < r) r = gm;
    std::vector<CF> z;
    for (int k = 0; k < n; ++k) {
        double a = 2 * M_PI * k / n + 0.4;
        z.emplace_back(mpf_class(r * std::cos(a), prec), mpf_class(r * std::sin(a), prec), prec);
    }
    return z;
}

struct Disk {
    GQ center;
    Rat radius; // upper bound
};

// Exact inclusion disks; nullopt when two approximations coincide.
inline std::optional<std::vector<Disk>> inclusion_disks(const UPoly& p, const std::vector<CF>& approx)
{
    const int n = p.degree();
    std::vector<GQ> z;
    for (const auto& a : approx) z.push_back(exact(a));
    std::vector<Disk> out;
    for (int i = 0; i < n; ++i) {
        GQ f{Rat(0), Rat(0)};
        for (std::size_t k = p.coeffs().size(); k-- > 0;) {
            f = f * z[i];
            f.re += p.coeffs()[k];
        }
        GQ d{p.lc(), Rat(0)};
        for (int j = 0; j < n; ++j)
            if (j != i) d = d * (z[i] - z[j]);
        Rat dn = d.norm();
        if (dn == 0) return std::nullopt;
        // radius^2 = n^2 |f|^2 / |d|^2
        Rat r2 = Rat(n) * Rat(n) * f.norm() / dn;
        out.push_back({z[i], sqrt_upper(r2)});
    }
    return out;
}

inline ComplexBox box_of(const Disk& d)
{
    return {d.center.re - d.radius, d.center.re + d.radius, d.center.im - d.radius, d.center.im + d.radius};
}

// Certified boxes, one per root, or nullopt if the boxes are not disjoint.
inline std::optional<std::vector<ComplexBox>> certify(const UPoly& p, const std::vector<CF>& approx)
{
    auto disks = inclusion_disks(p, approx);
    if (!disks) return std::nullopt;
    std::vector<ComplexBox> boxes;
    for (const auto& d : *disks) boxes.push_back(box_of(d));
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j)
            if (boxes[i].intersects(boxes[j])) return std::nullopt;
    return boxes;
}

inline std::vector<CF> reprecision(const std::vector<CF>& z, unsigned prec)
{
    std::vector<CF> out;
    for (const auto& v : z) out.emplace_back(v.re, v.im, prec);
    return out;
}

// Boxes for a square-free factor of degree >= 2 at or above `prec` bits,
// with every box narrower than `max_width` when given. The working
// precision actually used is written back to `prec`.
inline std::vector<ComplexBox> isolate_aberth(const UPoly& p, unsigned& prec, unsigned max_prec,
                                              const std::optional<Rat>& max_width = std::nullopt)
{
    std::vector<CF> z = initial_guesses(p, prec);
    for (;;) {
        aberth(p, z, prec);
        if (auto boxes = certify(p, z)) {
            bool narrow = true;
            if (max_width)
                for (const auto& b : *boxes) narrow = narrow && b.width() <= *max_width;
            if (narrow) return *boxes;
        }
        if (prec * 2 > max_prec)
            throw CertificationError("root isolation failed to certify at " + std::to_string(prec) + " bits");
        prec *= 2;
        z = reprecision(z, prec);
    }
}

inline bool all_real(const UPoly& p, const std::vector<UPoly>& seq)
{
    Rat b = root_bound(p);
    return sturm_count(seq, -b, b) == p.degree();
}

inline std::vector<ComplexBox> isolate_squarefree(const UPoly& p, unsigned& prec, unsigned max_prec, bool& real)
{
    real = true;
    if (p.degree() == 1) return {ComplexBox::point(-p.coeff(0) / p.coeff(1))};
    auto seq = sturm_sequence(p);
    if (all_real(p, seq)) return isolate_real_sturm(p, seq);
    real = false;
    return isolate_aberth(p, prec, max_prec);
}

inline bool center_less(const RootCluster& a, const RootCluster& b)
{
    Rat ar = a.box.center_re(), br = b.box.center_re();
    if (ar != br) return ar < br;
    return a.box.center_im() < b.box.center_im();
}

} // namespace detail

/// Shrinks the box to width <= 2^-bits around the same root. The result is
/// contained in the input box; a box already narrow enough is returned as is.
inline RootCluster refine(const RootCluster& c, unsigned bits, const RootOptions& opt = {})
{
    Rat target(1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), bits);
    if (c.box.width() <= target) return c;
    if (!c.factor) throw std::invalid_argument("refine: cluster without factor");
    const UPoly& p = *c.factor;
    RootCluster out = c;
    if (c.real) {
        Rat lo = c.box.re_lo, hi = c.box.re_hi;
        int slo = sgn(p(lo));
        while (hi - lo > target) {
            Rat m = (lo + hi) / 2;
            int sm = sgn(p(m));
            if (sm == 0) {
                lo = hi = m;
                break;
            }
            if (sm == slo) lo = m;
            else hi = m;
        }
        out.box = {lo, hi, Rat(0), Rat(0)};
        return out;
    }
    unsigned prec = std::max(opt.precision, bits + 64);
    for (;;) {
        auto boxes = detail::isolate_aberth(p, prec, std::max(opt.max_precision, 4 * prec), target);
        // other roots lie at positive distance from the old box
        std::vector<ComplexBox> hits;
        for (const auto& b : boxes)
            if (b.intersects(c.box)) hits.push_back(b);
        if (hits.size() == 1) {
            out.box = hits.front().intersection(c.box);
            return out;
        }
        if (prec * 2 > std::max(opt.max_precision, 4 * (bits + 64)))
            throw CertificationError("refine: could not separate root from neighbours");
        prec *= 2;
    }
}

/// Certified isolation of all complex roots with multiplicities. Clusters
/// are pairwise disjoint and sorted by box center (real part, then imaginary).
inline std::vector<RootCluster> isolate_roots(const UPoly& p, const RootOptions& opt = {})
{
    if (p.is_zero()) throw std::domain_error("isolate_roots: zero polynomial");
    if (opt.precision < 32) throw std::invalid_argument("isolate_roots: precision below 32 bits");
    auto parts = squarefree_decomposition(p);
    std::vector<RootCluster> out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto factor = std::make_shared<const UPoly>(parts[k].first);
        bool real = false;
        unsigned prec = opt.precision;
        for (auto& b : detail::isolate_squarefree(*factor, prec, opt.max_precision, real))
            out.push_back({b, parts[k].second, static_cast<int>(k), factor, real});
    }
    // factors are coprime, so overlaps between them go away under refinement
    for (bool clean = false; !clean;) {
        clean = true;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                if (!out[i].box.intersects(out[j].box)) continue;
                clean = false;
                for (std::size_t k : {i, j}) {
                    Rat w = out[k].box.width();
                    unsigned bits = 1;
                    if (w > 0) {
                        // smallest bits with 2^-bits <= w / 4
                        long e = static_cast<long>(mpz_sizeinbase(Int(w.get_den()).get_mpz_t(), 2)) -
                                 static_cast<long>(mpz_sizeinbase(Int(w.get_num()).get_mpz_t(), 2)) + 3;
                        bits = static_cast<unsigned>(std::max(1L, e));
                    }
                    if (bits > opt.max_precision)
                        throw CertificationError("root isolation: clusters of different multiplicity overlap");
                    if (w > 0) out[k] = refine(out[k], bits, opt);
                }
            }
    }
    std::sort(out.begin(), out.end(), detail::center_less);
    return out;
}

/// Number of distinct complex roots; exact.
inline int distinct_root_count(const UPoly& p)
{
    if (p.is_zero()) throw std::domain_error("distinct_root_count: zero polynomial");
    return squarefree_part(p).degree();
}

/// Box rendered as decimal midpoint and radius.
inline std::string describe(const ComplexBox& b, int digits = 20)
{
    auto dec = [&](const Rat& q) {
        mpf_class f(q, 256);
        mp_exp_t e;
        std::string s = f.get_str(e, 10, static_cast<std::size_t>(digits));
        if (s.empty()) return std::string("0");
        bool neg = s[0] == '-';
        if (neg) s.erase(0, 1);
        std::string r;
        if (e <= 0) r = "0." + std::string(static_cast<std::size_t>(-e), '0') + s;
        else if (static_cast<std::size_t>(e) >= s.size()) r = s + std::string(static_cast<std::size_t>(e) - s.size(), '0');
        else r = s.substr(0, static_cast<std::size_t>(e)) + "." + s.substr(static_cast<std::size_t>(e));
        return (neg ? "-" : "") + r;
    };
    std::string s = dec(b.center_re());
    if (b.center_im() != 0 || b.im_hi != b.im_lo) {
        Rat im = b.center_im();
        s += (im < 0 ? " - " : " + ") + dec(abs(im)) + "i";
    }
    s += " +/- " + dec(b.width() / 2);
    return s;
}

} // namespace quartic

#pragma once

// Arithmetic in K = Q[x]/(S) for square-free S, which need not be
// irreducible. An element is "zero" or a "unit" only when it is so at every
// root of S. Anything in between means S has to be split. Zero tests in a
// computation run under `split_evaluate` throw SplitRequest, and the
// computation is then redone on each factor (dynamic evaluation).

#include "linalg.hpp"
#include "rational.hpp"
#include "upoly.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quartic {

struct SplitRequest {
    UPoly factor; // proper factor of the modulus
};

class NF {
public:
    NF() = default;
    NF(std::shared_ptr<const UPoly> mod, UPoly v) : mod_(std::move(mod)), v_(std::move(v)) { reduce(); }
    NF(std::shared_ptr<const UPoly> mod, const Rat& c) : mod_(std::move(mod)), v_(UPoly::constant(c)) {}

    static NF generator(const std::shared_ptr<const UPoly>& mod) { return NF(mod, UPoly{Rat(0), Rat(1)}); }

    const UPoly& value() const { return v_; }
    const std::shared_ptr<const UPoly>& modulus() const { return mod_; }

    friend NF operator+(const NF& a, const NF& b) { return NF(pick(a, b), a.v_ + b.v_); }
    friend NF operator-(const NF& a, const NF& b) { return NF(pick(a, b), a.v_ - b.v_); }
    friend NF operator*(const NF& a, const NF& b) { return NF(pick(a, b), a.v_ * b.v_); }
    friend NF operator*(const NF& a, const Rat& c)
    {
        NF r = a;
        r.v_ *= c;
        return r;
    }
    NF operator-() const { return NF(mod_, -v_); }

    bool is_literally_zero() const { return v_.is_zero(); }

    // gcd with the modulus: 1 for a unit, the modulus itself for zero
    UPoly zero_locus() const
    {
        if (v_.is_zero()) return primitive(*mod_);
        return gcd(*mod_, v_);
    }

    bool is_unit() const { return zero_locus().degree() == 0; }

    /// Zero test valid at every root; throws SplitRequest if mixed.
    bool is_zero() const
    {
        if (v_.is_zero()) return true;
        UPoly g = gcd(*mod_, v_);
        if (g.degree() == 0) return false;
        throw SplitRequest{g};
    }

    NF inverse() const
    {
        // extended Euclid: u v + w S = g
        UPoly r0 = *mod_, r1 = v_, s0, s1 = UPoly::constant(1);
        while (r1.degree() > 0) {
            auto [q, r] = r0.divmod(r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            UPoly s = s0 - q * s1;
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r1.is_zero()) {
            // gcd is r0 of positive degree
            if (r0.degree() == mod_->degree()) throw std::domain_error("NF::inverse of zero");
            throw SplitRequest{primitive(r0)};
        }
        return NF(mod_, s1 * UPoly::constant(1 / r1.coeff(0)));
    }

private:
    void reduce()
    {
        if (mod_ && v_.degree() >= mod_->degree()) v_ = v_ % *mod_;
    }
    static const std::shared_ptr<const UPoly>& pick(const NF& a, const NF& b)
    {
        if (a.mod_ && b.mod_ && a.mod_ != b.mod_ && !(*a.mod_ == *b.mod_))
            throw std::invalid_argument("NF: elements of different fields");
        return a.mod_ ? a.mod_ : b.mod_;
    }

    std::shared_ptr<const UPoly> mod_;
    UPoly v_;
};

/// Runs `f` on Q[x]/(S), splitting S whenever `f` hits a mixed zero test.
/// Returns (factor, result) pairs whose factors multiply to primitive(S).
template <class R>
std::vector<std::pair<UPoly, R>> split_evaluate(const UPoly& S, const std::function<R(const std::shared_ptr<const UPoly>&)>& f)
{
    std::vector<std::pair<UPoly, R>> out;
    std::vector<UPoly> todo{primitive(S)};
    while (!todo.empty()) {
        UPoly m = std::move(todo.back());
        todo.pop_back();
        auto mod = std::make_shared<const UPoly>(m);
        try {
            out.emplace_back(m, f(mod));
        } catch (const SplitRequest& req) {
            UPoly g = primitive(req.factor);
            if (g.degree() <= 0 || g.degree() >= m.degree()) throw std::logic_error("split_evaluate: trivial split");
            todo.push_back(primitive(m.exact_div(g)));
            todo.push_back(g);
        }
    }
    return out;
}

/// Rewrites K = Q[x]/(S) with `a` as primitive element: returns the monic
/// minimal polynomial U of `a` (degree deg S) and, for each b in `others`,
/// the polynomial T_b of degree < deg S with b = T_b(a). Empty if `a` is not
/// primitive, i.e. takes a repeated value at two roots of S.
struct PrimitiveForm {
    UPoly minpoly;
    std::vector<UPoly> images;
};

inline std::optional<PrimitiveForm> primitive_form(const NF& a, const std::vector<NF>& others)
{
    const auto n = static_cast<std::size_t>(a.modulus()->degree());
    RatMatrix m(n, std::vector<Rat>(n));
    NF pw(a.modulus(), Rat(1));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m[i][k] = pw.value().coeff(i);
        pw = pw * a;
    }
    std::vector<std::vector<Rat>> rhs;
    rhs.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) rhs[0][i] = pw.value().coeff(i);
    for (const auto& b : others) {
        rhs.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) rhs.back()[i] = b.value().coeff(i);
    }
    if (!solve(m, rhs)) return std::nullopt;
    PrimitiveForm out;
    std::vector<Rat> u(n + 1);
    for (std::size_t i = 0; i < n; ++i) u[i] = -rhs[0][i];
    u[n] = 1;
    out.minpoly = UPoly(u);
    for (std::size_t k = 1; k < rhs.size(); ++k) out.images.push_back(UPoly(rhs[k]));
    return out;
}

} // namespace quartic

#pragma once

// Sparse multivariate polynomials over Q in a fixed, ordered variable context.
//
// Terms are kept in graded-lexicographic order (highest first); zero
// coefficients are never stored. The text form is
//     3*x^2*y - 1/2*z^4 + 7
// and print -> parse round-trips exactly.

#include "rational.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quartic {

using Exponent = std::vector<int>;
using Vars = std::shared_ptr<const std::vector<std::string>>;

inline Vars make_vars(std::vector<std::string> names)
{
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw std::invalid_argument("duplicate variable '" + names[i] + "'");
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

inline bool same_context(const Vars& a, const Vars& b)
{
    return a == b || (a && b && *a == *b);
}

/// Thrown when operands live in different variable contexts, or a variable is
/// not part of the context.
class ContextError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GrlexDescending {
    bool operator()(const Exponent& a, const Exponent& b) const
    {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da > db;
        return a > b;
    }
};

class Poly {
public:
    using TermMap = std::map<Exponent, Rat, GrlexDescending>;

    Poly() : vars_(make_vars({})) {}
    explicit Poly(Vars vars) : vars_(std::move(vars)) {}
    Poly(Vars vars, const Rat& c) : vars_(std::move(vars))
    {
        if (c != 0) terms_.emplace(Exponent(vars_->size(), 0), c);
    }

    static Poly variable(const Vars& vars, const std::string& name)
    {
        Poly p(vars);
        Exponent e(vars->size(), 0);
        e[p.index_of(name)] = 1;
        p.terms_.emplace(std::move(e), Rat(1));
        return p;
    }
    static Poly monomial(const Vars& vars, const Rat& c, Exponent e)
    {
        if (e.size() != vars->size()) throw ContextError("exponent length does not match context");
        Poly p(vars);
        if (c != 0) p.terms_.emplace(std::move(e), c);
        return p;
    }
    /// Univariate polynomial placed on variable `name` of `vars`.
    static Poly from_upoly(const Vars& vars, const std::string& name, const UPoly& u)
    {
        Poly p(vars);
        std::size_t i = p.index_of(name);
        for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
            if (u.coeffs()[k] == 0) continue;
            Exponent e(vars->size(), 0);
            e[i] = static_cast<int>(k);
            p.terms_.emplace(std::move(e), u.coeffs()[k]);
        }
        return p;
    }

    const Vars& vars() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
    }
    Rat constant_term() const
    {
        auto it = terms_.find(Exponent(nvars(), 0));
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::size_t index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < vars_->size(); ++i)
            if ((*vars_)[i] == name) return i;
        throw ContextError("unknown variable '" + name + "'");
    }

    int total_degree() const
    {
        if (terms_.empty()) return -1;
        const auto& e = terms_.begin()->first;
        return std::accumulate(e.begin(), e.end(), 0);
    }
    int degree(std::size_t var) const
    {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    int degree(const std::string& name) const { return degree(index_of(name)); }

    /// Leading term in graded-lex order.
    const std::pair<const Exponent, Rat>& leading_term() const
    {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return *terms_.begin();
    }

    bool is_homogeneous() const
    {
        if (terms_.empty()) return true;
        int d = total_degree();
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
        return true;
    }

    Poly operator-() const
    {
        Poly r(*this);
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const Rat& s)
    {
        if (s == 0) terms_.clear();
        else
            for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.check(b);
        Poly r(a.vars_);
        if (a.is_zero() || b.is_zero()) return r;
        const std::size_t n = a.nvars();
        Exponent e(n);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b)
    {
        return same_context(a.vars_, b.vars_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const
    {
        Poly r(vars_, Rat(1)), b(*this);
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1u;
            if (e) b *= b;
        }
        return r;
    }

    Poly derivative(std::size_t var) const
    {
        if (var >= nvars()) throw ContextError("derivative: variable index out of range");
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent f(e);
            f[var] -= 1;
            r.terms_.emplace(std::move(f), c * e[var]);
        }
        return r;
    }
    Poly derivative(const std::string& name) const { return derivative(index_of(name)); }

    /// Coefficients of var^0, var^1, ... as polynomials in the same context
    /// (with var's exponent cleared).
    std::vector<Poly> coefficients_in(std::size_t var) const
    {
        std::vector<Poly> out(static_cast<std::size_t>(std::max(degree(var), -1) + 1), Poly(vars_));
        for (const auto& [e, c] : terms_) {
            Exponent f(e);
            f[var] = 0;
            out[static_cast<std::size_t>(e[var])].terms_.emplace(std::move(f), c);
        }
        return out;
    }

    /// Replaces variable `var` by the rational `value`; context unchanged.
    Poly specialize(std::size_t var, const Rat& value) const
    {
        Poly r(vars_);
        std::vector<Rat> powers{Rat(1)};
        for (const auto& [e, c] : terms_) {
            while (static_cast<int>(powers.size()) <= e[var]) powers.push_back(powers.back() * value);
            Exponent f(e);
            f[var] = 0;
            r.add_term(f, c * powers[static_cast<std::size_t>(e[var])]);
        }
        return r;
    }

    /// Requires every variable other than `var` to be absent.
    UPoly to_upoly(std::size_t var) const
    {
        std::vector<Rat> c(static_cast<std::size_t>(std::max(degree(var), -1) + 1), Rat(0));
        for (const auto& [e, v] : terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != var && e[i] != 0) throw ContextError("to_upoly: polynomial is not univariate");
            c[static_cast<std::size_t>(e[var])] = v;
        }
        return UPoly(std::move(c));
    }
    UPoly to_upoly(const std::string& name) const { return to_upoly(index_of(name)); }

    /// Full evaluation at rationals, one per context variable.
    Rat operator()(const std::vector<Rat>& point) const { return evaluate<Rat>(point); }

    /// Evaluation in any commutative ring T constructible from Rat.
    template <class T>
    T evaluate(const std::vector<T>& point) const
    {
        return evaluate_with(point, [](const Rat& c) { return T(c); });
    }

    /// Same, with an explicit embedding of the coefficients into T.
    template <class T, class Lift>
    T evaluate_with(const std::vector<T>& point, Lift lift) const
    {
        if (point.size() != nvars()) throw ContextError("evaluate: wrong number of values");
        std::vector<std::vector<T>> powers(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) powers[i].push_back(lift(Rat(1)));
        T acc = lift(Rat(0));
        for (const auto& [e, c] : terms_) {
            T term = lift(c);
            for (std::size_t i = 0; i < nvars(); ++i) {
                if (e[i] == 0) continue;
                auto& pw = powers[i];
                while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
                term = term * pw[static_cast<std::size_t>(e[i])];
            }
            acc = acc + term;
        }
        return acc;
    }

    /// Composition: each variable named in `assignment` is replaced by its
    /// polynomial; the result lives in the context of those polynomials.
    /// Variables not assigned must exist (by name) in the target context.
    Poly substitute(const std::map<std::string, Poly>& assignment) const
    {
        if (assignment.empty()) return *this;
        const Vars target = assignment.begin()->second.vars();
        for (const auto& [name, p] : assignment) {
            index_of(name);
            if (!same_context(p.vars(), target)) throw ContextError("substitute: assignments disagree on context");
        }
        std::vector<Poly> images;
        images.reserve(nvars());
        for (const auto& name : *vars_) {
            auto it = assignment.find(name);
            if (it != assignment.end()) images.push_back(it->second);
            else images.push_back(Poly::variable(target, name));
        }
        return evaluate_with(images, [&](const Rat& c) { return Poly(target, c); });
    }

    /// Same polynomial read in a larger (or reordered) context containing all
    /// of this polynomial's variables.
    Poly embed(const Vars& target) const
    {
        std::vector<std::size_t> map(nvars());
        Poly probe(target);
        for (std::size_t i = 0; i < nvars(); ++i) map[i] = probe.index_of((*vars_)[i]);
        Poly r(target);
        for (const auto& [e, c] : terms_) {
            Exponent f(target->size(), 0);
            for (std::size_t i = 0; i < nvars(); ++i) f[map[i]] = e[i];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    /// Integer multiple with content 1 and positive leading coefficient.
    Poly primitive() const
    {
        if (terms_.empty()) return *this;
        Int den(1), num(0);
        for (const auto& [e, c] : terms_) den = lcm(den, c.get_den());
        for (const auto& [e, c] : terms_) num = gcd(num, c.get_num());
        Rat scale = make_rat(den, num);
        if (terms_.begin()->second < 0) scale = -scale;
        return *this * scale;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            Rat a = abs(c);
            bool has_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
            bool unit = (a == 1);
            if (!unit || !has_var) os << a.get_str();
            bool need_star = !unit || !has_var;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (need_star) os << "*";
                os << (*vars_)[i];
                if (e[i] > 1) os << "^" << e[i];
                need_star = true;
            }
        }
        return os.str();
    }

    static Poly parse(const std::string& text, const Vars& vars);

private:
    void check(const Poly& o) const
    {
        if (!same_context(vars_, o.vars_)) throw ContextError("polynomials live in different variable contexts");
    }
    void add_term(const Exponent& e, const Rat& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Vars vars_;
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

inline Poly Poly::parse(const std::string& text, const Vars& vars)
{
    Poly result(vars);
    std::size_t pos = 0;
    const std::size_t n = text.size();
    auto skip = [&] {
        while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) {
        throw ParseError("polynomial parse error at offset " + std::to_string(pos) + ": " + what);
    };
    auto read_uint = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return text.substr(start, pos - start);
    };

    skip();
    if (pos == n) fail("empty input");
    bool first = true;
    while (true) {
        skip();
        if (pos == n) break;
        int sgn = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sgn = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Rat coeff(sgn);
        Exponent e(vars->size(), 0);
        bool have_factor = false;
        while (true) {
            skip();
            if (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::string num = read_uint();
                Rat v{Int(num)};
                if (pos < n && text[pos] == '/') {
                    ++pos;
                    std::string den = read_uint();
                    Int d(den);
                    if (d == 0) fail("zero denominator");
                    v = make_rat(Int(num), d);
                }
                coeff *= v;
            } else if (pos < n && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                std::size_t start = pos;
                while (pos < n && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                std::string name = text.substr(start, pos - start);
                std::size_t idx = 0;
                try {
                    idx = result.index_of(name);
                } catch (const ContextError&) {
                    throw ParseError("unknown variable '" + name + "'");
                }
                int k = 1;
                skip();
                if (pos < n && text[pos] == '^') {
                    ++pos;
                    skip();
                    k = std::stoi(read_uint());
                }
                e[idx] += k;
            } else {
                fail("expected a coefficient or a variable");
            }
            have_factor = true;
            skip();
            if (pos < n && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        result.add_term(e, coeff);
    }
    return result;
}

} // namespace quartic

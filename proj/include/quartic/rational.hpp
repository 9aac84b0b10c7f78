#pragma once

// Exact rational scalars. Everything numeric in the library bottoms out here.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quartic {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown on malformed text input (polynomials, quartic files, rationals).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den = 1)
{
    if (den == 0) throw std::domain_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses `p`, `-p`, `p/q` with decimal integers.
inline Rat parse_rat(std::string_view text)
{
    std::string s(text);
    auto first = s.find_first_not_of(" \t\r\n");
    auto last = s.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("empty rational");
    s = s.substr(first, last - first + 1);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw ParseError("malformed rational '" + s + "'");
        return Rat(Int(strip_plus(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + s + "'");
    Int d(den);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    return make_rat(Int(strip_plus(num)), d);
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline int sign(const Rat& r) { return sgn(r); }

inline Rat pow(const Rat& base, unsigned e)
{
    Rat result(1), b(base);
    while (e) {
        if (e & 1u) result *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return result;
}

inline Int ipow(const Int& base, unsigned e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int gcd(const Int& a, const Int& b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Uniform integer in [-height, height] from a 64-bit engine. The reduction is
/// done by hand so the stream is identical across standard libraries.
inline long uniform_symmetric(std::mt19937_64& rng, long height)
{
    auto span = static_cast<std::uint64_t>(2 * height + 1);
    return static_cast<long>(rng() % span) - height;
}

} // namespace quartic

#pragma once

// Report plumbing for the command line tool: JSON views of library results,
// CSV flattening, and the sign-grid SVG of a real plane curve.

#include <quartic/hyperbolicity.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace report {

using nlohmann::ordered_json;
using namespace quartic;

// parts below the refinement width are noise from the box centres
inline ordered_json complex_pair(const std::complex<double>& z, unsigned bits)
{
    const double eps = std::ldexp(1.0, -static_cast<int>(std::min(bits, 1000u)));
    auto clean = [&](double x) { return std::abs(x) < eps ? 0.0 : x; };
    return ordered_json::array({clean(z.real()), clean(z.imag())});
}

// Lines as decimal approximations in the original frame, sorted canonically.
inline ordered_json line_list(const LineFamily& fam, const Mat3& chart, unsigned bits)
{
    auto lines = approximate(fam, chart, bits);
    auto key = [](const ApproxLine& l) {
        return std::tuple{l.a.real(), l.a.imag(), l.b.real(), l.b.imag(), l.c.real(), l.c.imag()};
    };
    std::sort(lines.begin(), lines.end(), [&](const ApproxLine& x, const ApproxLine& y) { return key(x) < key(y); });
    ordered_json out = ordered_json::array();
    for (const auto& l : lines)
        out.push_back({{"line", {complex_pair(l.a, bits), complex_pair(l.b, bits), complex_pair(l.c, bits)}},
                       {"slope_radius", Rat(l.slope.width() / 2).get_d()}});
    return out;
}

inline ordered_json family(const LineFamily& fam, const Mat3& chart, unsigned bits)
{
    return {{"slope_polynomial", fam.slope.to_string("s")},
            {"intercept", fam.intercept.to_string("s")},
            {"profile", profile_name(fam.profile)},
            {"lines", line_list(fam, chart, bits)}};
}

// families sorted by their slope polynomial text, so the order is canonical
inline ordered_json sorted(std::vector<ordered_json> v)
{
    std::sort(v.begin(), v.end(), [](const ordered_json& a, const ordered_json& b) {
        return a["slope_polynomial"].get<std::string>() < b["slope_polynomial"].get<std::string>();
    });
    return ordered_json(v);
}

inline ordered_json cusp(const CuspReport& r)
{
    ordered_json v = ordered_json::array();
    for (auto [i, k] : r.newton_vertices) v.push_back({i, k});
    return {{"slope_polynomial", r.slope.to_string("s")},
            {"lines", r.lines},
            {"multiplicity", r.multiplicity},
            {"tangent_cone_square", r.tangent_cone_square},
            {"cubic_along_cone", r.cubic_along_cone},
            {"generic_line_order", r.generic_line_order},
            {"newton_vertices", v},
            {"weights", {r.weights.first, r.weights.second}},
            {"cusp", r.is_cusp()}};
}

inline ordered_json chow_class(const ChowClass& c) { return c.to_string(); }

inline ordered_json grr(const GrrLedger& g)
{
    return {{"ch_log_tangent", chow_class(g.ch)},
            {"todd", chow_class(g.td)},
            {"product", chow_class(g.product)},
            {"times_universal_line", chow_class(g.times_V)},
            {"pushforward", {to_string(g.pushed[0]), to_string(g.pushed[1]), to_string(g.pushed[2])}},
            {"rank", to_string(g.rank)},
            {"c1", {to_string(g.c1.first), to_string(g.c1.second)}}};
}

// --- CSV: one row per leaf, keyed by its JSON path ---------------------------

inline std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n ") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline void flatten(const ordered_json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

inline std::string to_csv(const ordered_json& j)
{
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows) out += csv_quote(k) + "," + csv_quote(v) + "\n";
    return out;
}

// --- SVG ---------------------------------------------------------------------

// Real locus of a curve f(s, t) = 0 in the square [-range, range]^2. The sign
// of f is evaluated exactly at the rational grid vertices; a segment is drawn
// through each cell whose corners change sign, between midpoints of the sign-
// changing edges. Nothing is drawn where the exact signs agree.
inline std::string sign_grid_svg(const Poly& f, const Rat& range, int cells)
{
    const int n = cells;
    std::vector<std::vector<int>> sign(n + 1, std::vector<int>(n + 1));
    auto coord = [&](int k) -> Rat { return range * make_rat(2 * k - n, n); };
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k <= n; ++k) sign[i][k] = sgn(f({coord(i), coord(k)})) >= 0 ? 1 : -1;

    const double px = 600.0 / n;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    svg << "<rect width=\"600\" height=\"600\" fill=\"white\" stroke=\"black\"/>\n";
    // axes, s to the right, t upward
    svg << "<line x1=\"300\" y1=\"0\" x2=\"300\" y2=\"600\" stroke=\"#ccc\"/>\n";
    svg << "<line x1=\"0\" y1=\"300\" x2=\"600\" y2=\"300\" stroke=\"#ccc\"/>\n";
    svg << "<g stroke=\"black\" stroke-width=\"1.2\" fill=\"none\">\n";
    auto X = [&](double i) { return i * px; };
    auto Y = [&](double k) { return 600.0 - k * px; };
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            // edge midpoints where the sign changes: bottom, right, top, left
            std::vector<std::pair<double, double>> m;
            if (sign[i][k] != sign[i + 1][k]) m.emplace_back(i + 0.5, k);
            if (sign[i + 1][k] != sign[i + 1][k + 1]) m.emplace_back(i + 1, k + 0.5);
            if (sign[i][k + 1] != sign[i + 1][k + 1]) m.emplace_back(i + 0.5, k + 1);
            if (sign[i][k] != sign[i][k + 1]) m.emplace_back(i, k + 0.5);
            for (std::size_t a = 0; a + 1 < m.size(); a += 2)
                svg << "<line x1=\"" << X(m[a].first) << "\" y1=\"" << Y(m[a].second) << "\" x2=\"" << X(m[a + 1].first)
                    << "\" y2=\"" << Y(m[a + 1].second) << "\"/>\n";
        }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

} // namespace report

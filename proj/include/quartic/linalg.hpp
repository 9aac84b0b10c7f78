#pragma once

// Small exact dense linear algebra: fraction-free determinants over Z and
// rank / nullspace over Q.

#include "rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace quartic {

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

/// Bareiss fraction-free elimination on the first `pivot_cols` columns of `m`
/// (rows x cols, rows == pivot_cols + 1). Afterwards the entries of the last
/// row in columns >= pivot_cols equal det(M restricted to columns
/// {0..pivot_cols-1, j}) for each such j. Returns false if the pivot columns
/// are rank deficient, in which case every such determinant is zero.
inline bool bareiss_last_row(IntMatrix& m, std::size_t pivot_cols, int& sign)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    sign = 1;
    Int prev(1);
    for (std::size_t k = 0; k < pivot_cols; ++k) {
        std::size_t p = k;
        while (p < rows && m[p][k] == 0) ++p;
        if (p == rows) return false;
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                Int v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return true;
}

inline Int determinant(IntMatrix m)
{
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    int sign = 1;
    if (!bareiss_last_row(m, n - 1, sign)) return Int(0);
    return sign * m[n - 1][n - 1];
}

/// Row-reduces a copy of `m` over Q and returns the rank.
inline std::size_t rank(RatMatrix m)
{
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Basis of {v : m v = 0} over Q, one vector per free column.
inline std::vector<std::vector<Rat>> nullspace(RatMatrix m, std::size_t cols)
{
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(cols, false);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_of_row.push_back(c);
        is_pivot[c] = true;
        ++r;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_of_row.size(); ++i) v[pivot_of_row[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves a x = b_k for square nonsingular a and each right-hand side
/// b_k; returns false if a is singular.
inline bool solve(RatMatrix a, std::vector<std::vector<Rat>>& rhs)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return false;
        std::swap(a[p], a[c]);
        for (auto& b : rhs) std::swap(b[p], b[c]);
        Rat inv = 1 / a[c][c];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
            for (auto& b : rhs) b[i] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (auto& b : rhs) b[i] /= a[i][i];
    return true;
}

} // namespace quartic

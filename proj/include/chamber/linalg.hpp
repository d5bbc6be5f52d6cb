#pragma once

// Exact Gaussian elimination over the rationals. Matrices are row lists.

#include "chamber/core.hpp"

#include <utility>

namespace chamber {

using RatMatrix = std::vector<RatVec>;
using IntMatrix = std::vector<IntVec>;

namespace linalg {

struct Echelon {
    RatMatrix rows;                   // nonzero rows of the reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each row
};

inline Echelon rref(RatMatrix m, std::size_t cols) {
    Echelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[row], m[p]);
        const Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

inline std::size_t rank(const RatMatrix& m, std::size_t cols) {
    return rref(m, cols).pivots.size();
}

inline std::size_t rank(const IntMatrix& m, std::size_t cols) {
    RatMatrix r;
    r.reserve(m.size());
    for (const auto& v : m) r.push_back(to_rational(v));
    return rank(r, cols);
}

/// Basis of {x : m x = 0}, one vector per free column, in reduced form.
inline RatMatrix nullspace(const RatMatrix& m, std::size_t cols) {
    const Echelon e = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RatMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RatVec v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational determinant(RatMatrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col] == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            std::swap(m[p], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/// Solves m x = b for square nonsingular m.
inline RatVec solve(const RatMatrix& m, const RatVec& b) {
    const std::size_t n = m.size();
    require_rank(n, b.size(), "solve");
    RatMatrix aug = m;
    for (std::size_t i = 0; i < n; ++i) {
        require_rank(n, aug[i].size(), "solve");
        aug[i].push_back(b[i]);
    }
    const Echelon e = rref(std::move(aug), n + 1);
    if (e.pivots.size() != n || e.pivots.back() != n - 1)
        throw DomainError("solve: singular system");
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
    return x;
}

inline RatMatrix inverse(const RatMatrix& m) {
    const std::size_t n = m.size();
    RatMatrix aug = m;
    for (std::size_t i = 0; i < n; ++i) {
        require_rank(n, aug[i].size(), "inverse");
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? 1 : 0);
    }
    const Echelon e = rref(std::move(aug), 2 * n);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DomainError("inverse: singular matrix");
    RatMatrix inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
    return inv;
}

}  // namespace linalg
}  // namespace chamber

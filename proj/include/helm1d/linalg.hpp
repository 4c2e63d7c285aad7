#pragma once

// Small dense and tridiagonal complex solvers. The systems in scope are tiny
// (tridiagonal of size 2n, dense of size 2n+2 with n at most a few hundred in
// oracle paths), so a compact partial-pivoted LU is all that is needed; the
// point is determinism and zero dependencies, not peak flops.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "helm1d/types.hpp"

namespace helm1d {

struct DenseMatrix {
    std::size_t n = 0;
    std::vector<cplx> a;  // row-major n*n

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : n(dim), a(dim * dim, cplx{0.0, 0.0}) {}

    cplx& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct LuFactors {
    DenseMatrix lu;                 // L below the diagonal (unit), U on and above
    std::vector<std::size_t> perm;  // row permutation applied to the input
    int perm_sign = 1;
    bool near_singular = false;     // some pivot fell under tol * row scale
    double min_pivot_ratio = 1.0;   // smallest |pivot| / row-scale seen
};

inline LuFactors lu_factor(DenseMatrix m, double pivot_tol = 1e-14) {
    const std::size_t n = m.n;
    LuFactors f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    // Row scales for the relative pivot test.
    std::vector<double> scale(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            scale[i] = std::max(scale[i], std::abs(m.at(i, j)));

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double best = std::abs(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(m.at(i, k));
            if (cand > best) {
                best = cand;
                pivot_row = i;
            }
        }
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot_row, j));
            std::swap(f.perm[k], f.perm[pivot_row]);
            std::swap(scale[k], scale[pivot_row]);
            f.perm_sign = -f.perm_sign;
        }
        const double row_scale = std::max(scale[k], 1e-300);
        f.min_pivot_ratio = std::min(f.min_pivot_ratio, best / row_scale);
        if (best < pivot_tol * row_scale) f.near_singular = true;
        if (best == 0.0) continue;  // singular column; leave zeros, flag already set

        const cplx pivot = m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx factor = m.at(i, k) / pivot;
            m.at(i, k) = factor;
            if (factor == cplx{0.0, 0.0}) continue;
            for (std::size_t j = k + 1; j < n; ++j) m.at(i, j) -= factor * m.at(k, j);
        }
    }
    f.lu = std::move(m);
    return f;
}

inline std::vector<cplx> lu_solve(const LuFactors& f, const std::vector<cplx>& rhs) {
    const std::size_t n = f.lu.n;
    if (rhs.size() != n) throw std::invalid_argument("lu_solve: rhs size mismatch");
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu.at(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu.at(i, j) * x[j];
        x[i] /= f.lu.at(i, i);
    }
    return x;
}

inline cplx lu_det(const LuFactors& f) {
    cplx det{static_cast<double>(f.perm_sign), 0.0};
    for (std::size_t i = 0; i < f.lu.n; ++i) det *= f.lu.at(i, i);
    return det;
}

inline cplx dense_det(const DenseMatrix& m) { return lu_det(lu_factor(m)); }

inline DenseMatrix dense_inverse(const DenseMatrix& m) {
    const std::size_t n = m.n;
    const LuFactors f = lu_factor(m);
    DenseMatrix inv(n);
    std::vector<cplx> e(n, cplx{0.0, 0.0});
    for (std::size_t col = 0; col < n; ++col) {
        e[col] = 1.0;
        const std::vector<cplx> x = lu_solve(f, e);
        for (std::size_t i = 0; i < n; ++i) inv.at(i, col) = x[i];
        e[col] = 0.0;
    }
    return inv;
}

struct TridiagSolveResult {
    std::vector<cplx> x;
    bool near_singular = false;
    double min_pivot_ratio = 1.0;
};

// Partial-pivoted LU for a tridiagonal system. Each elimination step chooses
// between the current row and the one below it (a 2x2 pivot decision), which
// introduces at most one extra superdiagonal of fill-in.
inline TridiagSolveResult tridiag_solve_pivoted(std::vector<cplx> diag,
                                                std::vector<cplx> lower,
                                                std::vector<cplx> upper,
                                                std::vector<cplx> rhs,
                                                double pivot_tol = 1e-14) {
    const std::size_t m = diag.size();
    if (m == 0) throw std::invalid_argument("tridiag_solve_pivoted: empty system");
    if (lower.size() + 1 != m || upper.size() + 1 != m || rhs.size() != m)
        throw std::invalid_argument("tridiag_solve_pivoted: band size mismatch");

    TridiagSolveResult res;
    std::vector<cplx> super2(m, cplx{0.0, 0.0});  // fill-in band

    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double here = std::abs(diag[i]);
        const double below = std::abs(lower[i]);
        const double row_scale = std::max({here, std::abs(upper[i]), std::abs(super2[i]), below, 1e-300});
        if (below > here) {
            // Swap row i with row i+1; row i+1 currently holds
            // (lower[i], diag[i+1], upper[i+1], 0).
            std::swap(diag[i], lower[i]);          // new pivot
            std::swap(upper[i], diag[i + 1]);
            cplx tmp = (i + 2 < m) ? upper[i + 1] : cplx{0.0, 0.0};
            if (i + 2 < m) upper[i + 1] = super2[i];
            super2[i] = tmp;
            std::swap(rhs[i], rhs[i + 1]);
        }
        const double pivot_abs = std::abs(diag[i]);
        res.min_pivot_ratio = std::min(res.min_pivot_ratio, pivot_abs / row_scale);
        if (pivot_abs < pivot_tol * row_scale) res.near_singular = true;
        if (pivot_abs == 0.0) continue;

        const cplx factor = lower[i] / diag[i];
        lower[i] = factor;  // kept only for bookkeeping
        diag[i + 1] -= factor * upper[i];
        if (i + 2 < m) upper[i + 1] -= factor * super2[i];
        rhs[i + 1] -= factor * rhs[i];
    }
    {
        const double last = std::abs(diag[m - 1]);
        const double row_scale = std::max(last, 1e-300);
        res.min_pivot_ratio = std::min(res.min_pivot_ratio, last / row_scale);
        if (last < pivot_tol * row_scale) res.near_singular = true;
    }

    res.x.assign(m, cplx{0.0, 0.0});
    for (std::size_t i = m; i-- > 0;) {
        cplx v = rhs[i];
        if (i + 1 < m) v -= upper[i] * res.x[i + 1];
        if (i + 2 < m) v -= super2[i] * res.x[i + 2];
        res.x[i] = v / diag[i];
    }
    return res;
}

}  // namespace helm1d

#pragma once

// The reflection recursion Q_j, determinant closed forms, the Green's-matrix
// column representation, the G_{n,m} factors, and the phase-maximizer
// machinery with its closed-form growth caps.

#include <cstddef>
#include <vector>

#include "helm1d/tolerances.hpp"
#include "helm1d/types.hpp"

namespace helm1d {

// Cumulative reflection coefficients. Q_0 = 0 and
// Q_j = (q_j + Q_{j-1}) / (sigma_j (1 + q_j Q_{j-1})); a Moebius map of the
// open unit disc, so |Q_j| < 1 in exact arithmetic (clamped to the closed
// disc against rounding for resonance-engineered inputs).
struct QSequence {
    std::vector<cplx> Q;       // Q_0..Q_n, size n+1
    std::vector<cplx> Qprime;  // Q'_j = sigma_j Q_j, same indexing, Q'_0 = 0
    std::vector<cplx> sigma;   // inputs sigma_1..sigma_n
    std::vector<double> q;     // inputs q_1..q_n

    std::size_t n() const { return q.size(); }
    double max_abs() const;
    // True if 1 - |Q_j|^2 < threshold for some j: downstream divisions by
    // sqrt(1 - |Q_j|^2) are no longer meaningful as numbers.
    bool effectively_resonant(const Tolerances& tol = Tolerances::defaults()) const;
};

// sigma holds sigma_1..sigma_n aligned with q (the leading sigma_0 of the
// derived parameters never enters the recursion). Rejects |q_j| >= 1 and
// non-unit sigma. Each returned value is a single division of the composed
// Moebius state, so the profile stays accurate through near-resonant peaks
// instead of amplifying the peak's rounding along the descending branch.
QSequence q_sequence(const std::vector<cplx>& sigma, const std::vector<double>& q,
                     const Tolerances& tol = Tolerances::defaults());

// p~_n = prod_{j=1}^{n-1} (1 + q_{j+1} Q_j); empty product for n = 1.
cplx p_tilde(const std::vector<cplx>& sigma, const std::vector<double>& q,
             const Tolerances& tol = Tolerances::defaults());

// det M^(2n) = (-1)^n p~_n; with reduced = true (last row and column removed)
// det M^(2n-1) = -sigma_n Q_n det M^(2n). Requires n >= 2.
cplx det_M(const std::vector<cplx>& sigma, const std::vector<double>& q, bool reduced,
           const Tolerances& tol = Tolerances::defaults());

enum class ColumnSide { first, last };

// Product accumulation: plain complex products, or log-magnitude plus phase
// sums for long media. `automatic` switches on n > tol.log_product_threshold.
enum class ProductMode { automatic, plain, log_accumulated };

struct GreenColumn {
    std::vector<cplx> entries;  // size 2n
    ColumnSide which = ColumnSide::last;
};

// One extremal column of the inverse of the 2n x 2n coefficient matrix. The
// entries depend on the half-phase branch, so the input is sqrt_sigma_1..
// sqrt_sigma_n (the same branch the matrix was assembled with); sigma_j is
// recovered as its square. The first column is evaluated by reversing the
// medium (q~_j = -q_{n+1-j}, sqrt_sigma~_j = sqrt_sigma_{n-j}) and reading
// the reversed last column backwards.
GreenColumn green_column(const std::vector<cplx>& sqrt_sigma, const std::vector<double>& q,
                         ColumnSide which = ColumnSide::last,
                         ProductMode mode = ProductMode::automatic,
                         const Tolerances& tol = Tolerances::defaults());

// G_{n,m} = |prod_{l=n-m+1}^n sqrt(1-q_l^2) / (1 + q_l Q_{l-1})| for 1 <= m <= n.
double g_factor(const std::vector<cplx>& sigma, const std::vector<double>& q, std::size_t m,
                const Tolerances& tol = Tolerances::defaults());

// The phase choice maximizing |Q_j|: sigma^_i = sign(q_i q_{i+1}) for i < j
// and sigma^_j = sigma_last (the last phase is free). Rejects q_i = 0, where
// the sign is undefined (any phase attains the degenerate maximum there).
std::vector<cplx> sigma_hat(const std::vector<double>& q, cplx sigma_last = cplx{1.0, 0.0});

// r~_j(q) = ((1+q)^j - (1-q)^j) / ((1+q)^j + (1-q)^j) = tanh(j atanh q), the
// modulus reached after j maximizer steps of equal strength q. Accepts real
// (non-integer) step counts; the result is clamped below 1 so that the
// documented return range [0,1) holds even when tanh rounds to 1.
double max_modulus_closed_form(double q, double j);

// 1 - r~_j(q), computed without cancellation; underflows to a subnormal or
// zero only beyond |log| ~ 700, far past any representable distinction.
double max_modulus_complement(double q, double j);

// r_{q~,m}(q) = tanh(atanh(q~) + (m-1) atanh(q)): growth majorant seeded at
// modulus q~ with m-1 further steps of strength q. Seeding the measured |Q_j|
// therefore majorizes |Q_{j+m}| with argument m+1.
double growth_majorant(double q_tilde, double q, int m);

}  // namespace helm1d

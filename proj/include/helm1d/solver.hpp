#pragma once

// Wave solutions: three independent solve paths (structured elimination,
// Green-column expansion, dense oracle), pointwise evaluation, and the exact
// interval norms used for stability measurements.

#include <cstddef>
#include <vector>

#include "helm1d/medium.hpp"
#include "helm1d/tolerances.hpp"
#include "helm1d/types.hpp"

namespace helm1d {

// u restricted to interval j (1-based) is
// A_j e^{i k_j x} + B_j e^{-i k_j x} with k_j = omega / (sqrt(a_j) c_j),
// a == 1 unless the instance carries diffusion (only the oracle solves such
// instances directly; the main paths require a reduced problem).
struct WaveSolution {
    ProblemInstance instance;
    std::vector<cplx> A;  // A_1..A_{n+1}
    std::vector<cplx> B;  // B_1..B_{n+1}
    // Set when an elimination pivot fell under the working-precision floor or
    // the reflection recursion reached modulus 1 within tolerance.
    bool effectively_resonant = false;
};

// Structured path: scale the two-entry right-hand side by D, solve the
// symmetric tridiagonal system with pivoting, scale back, unpack. Requires
// a == 1; the no-jump case is closed form.
WaveSolution solve_direct(const ProblemInstance& instance,
                          const Tolerances& tol = Tolerances::defaults());

// Green-column path: the right-hand side has only two nonzero entries, so the
// solution is a combination of the first and last columns of the inverse.
WaveSolution solve_green(const ProblemInstance& instance,
                         const Tolerances& tol = Tolerances::defaults());

// Dense transmission-system solve; the authoritative cross-check. Accepts
// variable diffusion. Guarded to n <= 2000 jumps.
WaveSolution solve_oracle(const ProblemInstance& instance,
                          const Tolerances& tol = Tolerances::defaults());

// k-th derivative (k = 0,1,2) of u at each point; points must lie in [-1,1].
// At mesh points the left interval is used.
std::vector<cplx> evaluate(const WaveSolution& solution, const std::vector<double>& points,
                           int k = 0);

// Exact ||u^(k)||_{L^2(-1,1)} from the per-interval quadratic form (no
// quadrature): on each interval the cross term carries sinc(k_j h_j) with
// sinc(0) = 1 and the diffusion weight a_j^k.
double energy_norm(const WaveSolution& solution, int k);

// The weighted norm (||sqrt(a) u'||^2 + sum_j (omega/c_j)^2 ||u||^2)^{1/2}
// in which the stability constant is measured.
double energy_space_norm(const WaveSolution& solution);

// Worst-case interface/boundary defects of a computed solution, for oracle
// checks and the verify command.
struct ResidualReport {
    double transmission_u = 0.0;   // max |u(x_j^-) - u(x_j^+)|
    double transmission_du = 0.0;  // max |a u'(x_j^-) - a u'(x_j^+)|
    double bc_left = 0.0;          // left impedance defect
    double bc_right = 0.0;         // right impedance defect
    double solution_scale = 1.0;   // max(1, |u| and |u'|/omega at the nodes)
    double data_scale = 1.0;       // max(1, |g1|, |g2|)
};

ResidualReport residuals(const WaveSolution& solution);

}  // namespace helm1d

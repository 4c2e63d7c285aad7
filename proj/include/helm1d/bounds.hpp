#pragma once

// Coefficient-explicit stability bounds: the main upper bound driven by the
// reflection profile, the per-interval lower bound, the two regime-specific
// growth caps, and the combined majorant for alternating media.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "helm1d/medium.hpp"
#include "helm1d/solver.hpp"
#include "helm1d/tolerances.hpp"

namespace helm1d {

// A certified number plus its origin. When `finite` is false the value is the
// clamp-level lower end of [value, infinity): the input was effectively
// resonant and the true constant is only known to exceed it.
struct BoundValue {
    double value = 0.0;
    bool finite = true;
    std::string label;  // which estimate produced the number
    std::vector<std::string> assumptions;
};

struct StabilityReport {
    // |Q_j| for j = 1..n.
    std::vector<double> q_profile;
    bool effectively_resonant = false;
    // max_j 1/sqrt(1 - |Q_j|^2), clamped at the resonance threshold.
    double max_inv_sqrt = 1.0;

    // 4 (c_max/c_min) max_inv_sqrt and the induced per-order bounds
    // 4 (c_max/c_min^k) omega^{k-1} max(|g1|,|g2|) max_inv_sqrt.
    BoundValue c_stab_main;
    std::array<BoundValue, 3> upper;

    // Combined-majorant section (filled by combined_bound).
    bool has_majorant = false;
    std::string regime;        // above-resonance | small-step | mixed
    double q_cap = 0.0;        // certified cap on max_j |Q_j|
    BoundValue majorant;       // certified cap on the stability constant
    // Explicit constants with C_stab <= C_q * alpha_q^{-omega/c_min}.
    double C_q = 0.0;
    double alpha_q = 1.0;
    // Informational: the frequency-independent cap r~_n(max|q|) from the
    // jump count alone.
    double jump_count_cap = 0.0;
};

StabilityReport stability_upper(const ProblemInstance& instance,
                                const Tolerances& tol = Tolerances::defaults());

// max_j sqrt((2/15) h_j) (omega/c_j)^k (t_j/(1+t_j)) max(|A_j|,|B_j|) with
// t_j = omega h_j / c_j, for k = 0, 1, 2. A guaranteed minorant of the exact
// norm, nonzero whenever the solution is.
std::array<double, 3> stability_lower(const WaveSolution& solution);

// Explicit exponential floor for the resonance-engineered alternating medium
// (relative jump q, unit boundary load on the right, zero on the left): the
// energy-space norm of its solution is at least
//   pi (1-q)^{3/2} / (9 sqrt5 (pi+2)) * (1/2 + pi / (sqrt(5(1-q)) (pi+2)))
//   * omega^{-1/2} * ((1+q)/(1-q))^{omega/2},
// which grows exponentially in omega. Requires q in (0,1), omega > 0.
double growth_lower_bound(double omega, double q);

// Output of the two regime propositions.
struct RegimeCap {
    double q_cap = 0.0;    // cap on max_j |Q_j|
    double cap_sq = 0.0;   // the same cap, squared (the small-step native form)
    double N = 0.0;        // above-resonance: admissible step budget 2 omega/(eps c_min) - 1
    double alpha_interior = 1.0;  // small-step: the two proof branches
    double alpha_boundary = 1.0;
    BoundValue c_stab_cap;
};

// Requires omega h_j / c_j > epsilon on every interval. The number of
// intervals is then at most N = 2 omega/(epsilon c_min) - 1, so
// |Q_j| <= r~_N(max|q|) and C_stab <= 4 kappa / sqrt(1 - r~_N^2).
RegimeCap bound_above_resonance(const ProblemInstance& instance, double epsilon,
                                const Tolerances& tol = Tolerances::defaults());

// Requires perfectly alternating wave speed and all round-trip phases
// 2 omega h_j / c_j <= phi_max <= min(1/8, (1-q^2)/(4q)). Returns the cap
// |Q_j|^2 <= 1 - (1-q^2) alpha with alpha the smaller of the interior branch
// (1/2)^{4 q s/(1-q^2)} and the boundary branch (1 - 2 q phi/(1-q^2))^{s/phi+1},
// s = 4 omega / c_min. Certified under the documented unit Taylor-constant
// assumption.
RegimeCap bound_small_step(const ProblemInstance& instance, double phi_max,
                           const Tolerances& tol = Tolerances::defaults());

// Final majorant for media alternating between two speeds: classifies the
// intervals against the phase threshold phi* = phase_split_scale *
// min(1/8, (1-q^2)/(4q)), reduces to the pure-regime caps when the partition
// is one-sided, and otherwise walks the recursion budget additively in
// atanh coordinates. Throws for non-alternating media.
StabilityReport combined_bound(const ProblemInstance& instance,
                               const Tolerances& tol = Tolerances::defaults());

}  // namespace helm1d

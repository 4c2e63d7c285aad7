#pragma once

// Domain model: layered media on (-1,1), problem instances, and the derived
// per-interval parameters (widths, round-trip phases, relative jumps) that the
// rest of the library is written in terms of.

#include <cstddef>
#include <vector>

#include "helm1d/tolerances.hpp"
#include "helm1d/types.hpp"

namespace helm1d {

// Intervals are numbered 1..n+1 in reports (tau_j = (x_{j-1}, x_j)); storage
// is 0-based: c[i] is the speed on interval i+1, mesh[i] is x_i.
struct LayeredMedium {
    std::vector<double> mesh;  // x_0 .. x_{n+1}, x_0 = -1, x_{n+1} = 1
    std::vector<double> c;     // one positive speed per interval
    std::vector<double> a;     // optional diffusion per interval; empty means a == 1

    std::size_t intervals() const { return c.size(); }
    // Number of interior jump points n (= intervals - 1 for a valid medium).
    std::size_t jumps() const { return c.empty() ? 0 : c.size() - 1; }
    bool has_diffusion() const { return !a.empty(); }
};

struct ProblemInstance {
    LayeredMedium medium;
    double omega = 1.0;
    cplx g1{0.0, 0.0};  // impedance datum at x = -1
    cplx g2{0.0, 0.0};  // impedance datum at x = +1
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Snap endpoints within tol.mesh_snap of -1 / +1 to the exact values.
void snap_endpoints(LayeredMedium& m, const Tolerances& tol = Tolerances::defaults());

ValidationResult validate(const LayeredMedium& m,
                          const Tolerances& tol = Tolerances::defaults());
ValidationResult validate(const ProblemInstance& instance,
                          const Tolerances& tol = Tolerances::defaults());

// Everything derived from (mesh, c, omega). sigma[j] = exp(-2i h_{j+1} omega /
// c_{j+1}) for j = 0..n; sqrt_sigma holds the half-phase exp(-i h_{j+1} omega /
// c_{j+1}), and sigma is defined as its square so that sqrt_sigma[j]^2 ==
// sigma[j] holds exactly. A principal square root would pick the wrong sign
// for half the phase range, so the half-phase is the primitive quantity.
struct DerivedParams {
    double omega = 1.0;
    std::vector<double> mesh;        // copy of the instance mesh
    std::vector<double> c;           // copy of the speeds
    std::vector<double> h;           // h[i] = mesh[i+1] - mesh[i], size n+1
    std::vector<cplx> sigma;         // size n+1, index j = 0..n
    std::vector<cplx> sqrt_sigma;    // same indexing, squares to sigma exactly
    std::vector<double> q;           // q[i] = q_{i+1} in 1-based terms, size n
    double kappa = 1.0;              // c_max / c_min

    std::size_t n() const { return q.size(); }

    // alpha_{ell,j} = exp(i omega x_j / c_ell); ell is 1-based in 1..n+1,
    // j is a mesh index in 0..n+1.
    cplx alpha(std::size_t ell, std::size_t j) const;

    // sigma_1..sigma_n (resp. their half-phases), aligned with q for the
    // reflection recursion; drops the sigma_0 entry.
    std::vector<cplx> sigma_tail() const;
    std::vector<cplx> sqrt_sigma_tail() const;
};

// Throws std::invalid_argument (first violation message) on invalid input.
DerivedParams derive_params(const ProblemInstance& instance,
                            const Tolerances& tol = Tolerances::defaults());

// Change of variable eta(x) = -1 + (2/A) * integral_{-1}^x ds/a(s) with
// A = integral_{-1}^1 ds/a(s), turning -(a u')' - (omega/c)^2 u = 0 into a
// plain Helmholtz problem -v'' - (omega/c~)^2 v = 0 with u(x) = v(eta(x)).
struct VariableAReduction {
    ProblemInstance reduced;            // a == 1; c~_j = (2/A) c_j / sqrt(a_j)
    std::vector<double> original_mesh;  // kept for the eta map
    std::vector<double> original_a;
    double total = 2.0;                 // A

    // Piecewise-linear map from original coordinates to reduced ones.
    double eta(double x) const;
    // Derivative of eta on the interval owning x (left interval at mesh points).
    double eta_prime(double x) const;
};

// The boundary data transform as g~ = (A/2) g, which keeps the impedance
// form of the boundary conditions for v. Identity when a == 1.
VariableAReduction reduce_variable_a(const ProblemInstance& instance,
                                     const Tolerances& tol = Tolerances::defaults());

}  // namespace helm1d

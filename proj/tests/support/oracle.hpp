#pragma once

// Independent cross-check helpers for the test suite. Everything here is
// deliberately written against the definitions, not against the library
// internals: Simpson quadrature instead of the closed-form norms, central
// differences instead of the analytic derivative, dense minors instead of
// the banded determinant recursions.

#include <complex>
#include <cstddef>
#include <vector>

#include "helm1d/linalg.hpp"
#include "helm1d/medium.hpp"
#include "helm1d/solver.hpp"

namespace helm1d::testing {

// Relative difference with a floor on the reference scale.
inline double rel(double got, double want, double floor_scale = 1e-300) {
    const double scale = std::max(std::abs(want), floor_scale);
    return std::abs(got - want) / scale;
}

inline double rel(cplx got, cplx want, double floor_scale = 1e-300) {
    const double scale = std::max(std::abs(want), floor_scale);
    return std::abs(got - want) / scale;
}

// Vector-relative difference: max entry error over the reference sup norm.
double vec_rel(const std::vector<cplx>& got, const std::vector<cplx>& want);

// Shorthand for assembling instances inline in tests.
ProblemInstance make_instance(std::vector<double> mesh, std::vector<double> c,
                              double omega, cplx g1, cplx g2,
                              std::vector<double> a = {});

// Composite-Simpson value of ||u^(k)||^2_{L^2} over one interval, evaluating
// the exponentials directly from the coefficients. panels is per interval
// and is rounded up to an even count.
double simpson_interval_norm_sq(const WaveSolution& sol, std::size_t interval,
                                int k, std::size_t panels = 10000);

// Simpson value of ||u^(k)||_{L^2(-1,1)}.
double simpson_norm(const WaveSolution& sol, int k, std::size_t panels = 10000);

// Simpson value of the energy-space norm
// sqrt(||u'||^2 + sum_j (omega/(sqrt(a_j) c_j))^2 ||u||^2_{interval j}).
double simpson_energy_space(const WaveSolution& sol, std::size_t panels = 10000);

// Central differences of the sampled solution; x must sit at least step away
// from every mesh point so the stencil stays inside one interval.
cplx central_diff1(const WaveSolution& sol, double x, double step = 1e-5);
cplx central_diff2(const WaveSolution& sol, double x, double step = 1e-5);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

// Determinant of the leading dim x dim block.
cplx leading_minor_det(const DenseMatrix& m, std::size_t dim);

// Determinant after removing (1-based) row i and the last column.
cplx det_remove_row_last_col(const DenseMatrix& m, std::size_t i);

// Column col (0-based) of the inverse.
std::vector<cplx> dense_inverse_column(const DenseMatrix& m, std::size_t col);

// A two-speed alternating medium whose round-trip phases all stay under a
// drawn fraction of the small-step gate. Returns the instance and writes the
// drawn budget to phi_max (every phase is at most ~0.6 of it).
ProblemInstance alternating_small_phase(std::uint64_t seed, double& phi_max);

}  // namespace helm1d::testing

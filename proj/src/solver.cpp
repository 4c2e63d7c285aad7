#include "helm1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helm1d/assembly.hpp"
#include "helm1d/linalg.hpp"
#include "helm1d/qrec.hpp"

namespace helm1d {

namespace {

void require_valid(const ProblemInstance& instance, const Tolerances& tol) {
    const ValidationResult res = validate(instance, tol);
    if (!res.ok())
        throw std::invalid_argument("invalid instance: " + res.violations.front().message);
}

bool has_nontrivial_a(const ProblemInstance& instance) {
    for (double v : instance.medium.a)
        if (v != 1.0) return true;
    return false;
}

void require_unit_a(const ProblemInstance& instance, const char* who) {
    if (has_nontrivial_a(instance))
        throw std::invalid_argument(std::string(who) +
                                    ": requires a == 1; reduce the variable-a problem first");
}

// Unknown order of the 2n-vector: (B_1, A_2, B_2, ..., A_n, B_n, A_{n+1}).
void unpack(const std::vector<cplx>& x, WaveSolution& sol) {
    const std::size_t n = sol.A.size() - 1;
    sol.B[0] = x[0];
    for (std::size_t j = 2; j <= n; ++j) {
        sol.A[j - 1] = x[2 * j - 3];
        sol.B[j - 1] = x[2 * j - 2];
    }
    sol.A[n] = x[2 * n - 1];
}

double wavenumber(const WaveSolution& sol, std::size_t interval) {
    const ProblemInstance& inst = sol.instance;
    const double a =
        inst.medium.a.empty() ? 1.0 : inst.medium.a[interval];
    return inst.omega / (std::sqrt(a) * inst.medium.c[interval]);
}

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

}  // namespace

WaveSolution solve_direct(const ProblemInstance& instance, const Tolerances& tol) {
    require_valid(instance, tol);
    require_unit_a(instance, "solve_direct");
    const DerivedParams p = derive_params(instance, tol);
    const std::size_t n = p.n();
    const RhsVector rhs = build_rhs(instance, p);

    WaveSolution sol;
    sol.instance = instance;
    sol.A.assign(n + 1, cplx{0.0, 0.0});
    sol.B.assign(n + 1, cplx{0.0, 0.0});
    sol.A.front() = rhs.A1;
    sol.B.back() = rhs.Bnp1;
    if (n == 0) return sol;

    const BlockTridiagonalSystem sys = build_system(p);
    const DiagonalScaling d = build_scaling(p);
    std::vector<cplx> scaled(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) scaled[i] = d.entries[i] * rhs.r[i];

    const std::vector<cplx> off = sys.offdiagonal();
    TridiagSolveResult tri = tridiag_solve_pivoted(sys.diagonal(), off, off, std::move(scaled),
                                                   tol.effectively_resonant);
    sol.effectively_resonant = tri.near_singular;

    std::vector<cplx> x(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) x[i] = d.entries[i] * tri.x[i];
    unpack(x, sol);
    return sol;
}

WaveSolution solve_green(const ProblemInstance& instance, const Tolerances& tol) {
    require_valid(instance, tol);
    require_unit_a(instance, "solve_green");
    const DerivedParams p = derive_params(instance, tol);
    const std::size_t n = p.n();
    const RhsVector rhs = build_rhs(instance, p);

    WaveSolution sol;
    sol.instance = instance;
    sol.A.assign(n + 1, cplx{0.0, 0.0});
    sol.B.assign(n + 1, cplx{0.0, 0.0});
    sol.A.front() = rhs.A1;
    sol.B.back() = rhs.Bnp1;
    if (n == 0) return sol;

    const std::vector<cplx> half = p.sqrt_sigma_tail();
    const GreenColumn first = green_column(half, p.q, ColumnSide::first, ProductMode::automatic, tol);
    const GreenColumn last = green_column(half, p.q, ColumnSide::last, ProductMode::automatic, tol);
    sol.effectively_resonant = q_sequence(p.sigma_tail(), p.q, tol).effectively_resonant(tol);

    const DiagonalScaling d = build_scaling(p);
    const cplx w_first = d.entries.front() * rhs.r.front();
    const cplx w_last = d.entries.back() * rhs.r.back();
    std::vector<cplx> x(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        x[i] = d.entries[i] * (first.entries[i] * w_first + last.entries[i] * w_last);
    unpack(x, sol);
    return sol;
}

WaveSolution solve_oracle(const ProblemInstance& instance, const Tolerances& tol) {
    require_valid(instance, tol);
    const DerivedParams p = derive_params(instance, tol);
    const std::size_t n = p.n();
    if (n > 2000) throw std::invalid_argument("solve_oracle: dense cost guard, n <= 2000");

    const RawTransmissionSystem raw = build_raw_system(instance, p);
    const LuFactors lu = lu_factor(raw.matrix, tol.effectively_resonant);
    const std::vector<cplx> x = lu_solve(lu, raw.rhs);

    WaveSolution sol;
    sol.instance = instance;
    sol.effectively_resonant = lu.near_singular;
    sol.A.resize(n + 1);
    sol.B.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        sol.A[j] = x[2 * j];
        sol.B[j] = x[2 * j + 1];
    }
    return sol;
}

std::vector<cplx> evaluate(const WaveSolution& sol, const std::vector<double>& points, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("evaluate: derivative order must be 0, 1 or 2");
    const std::vector<double>& mesh = sol.instance.medium.mesh;
    std::vector<cplx> out(points.size());
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const double x = points[idx];
        if (x < mesh.front() || x > mesh.back())
            throw std::out_of_range("evaluate: point outside the domain");
        // Left interval at mesh points.
        std::size_t t = std::lower_bound(mesh.begin() + 1, mesh.end(), x) - (mesh.begin() + 1);
        if (t + 1 >= mesh.size()) t = mesh.size() - 2;
        const double kj = wavenumber(sol, t);
        cplx fwd{1.0, 0.0}, bwd{1.0, 0.0};
        for (int d = 0; d < k; ++d) {
            fwd *= iu * kj;
            bwd *= -iu * kj;
        }
        out[idx] = fwd * sol.A[t] * std::polar(1.0, kj * x) +
                   bwd * sol.B[t] * std::polar(1.0, -kj * x);
    }
    return out;
}

namespace {

// ||u^(k)||^2 restricted to interval t (0-based): the quadratic form
// k_j^{2k} h [ |A|^2 + |B|^2 + 2 (-1)^k sinc(k_j h) Re(A conj(B) e^{i k_j (x_l + x_r)}) ].
double interval_norm_sq(const WaveSolution& sol, std::size_t t, int k) {
    const std::vector<double>& mesh = sol.instance.medium.mesh;
    const double kj = wavenumber(sol, t);
    const double h = mesh[t + 1] - mesh[t];
    const cplx A = sol.A[t], B = sol.B[t];
    const double cross =
        (std::norm(A) == 0.0 && std::norm(B) == 0.0)
            ? 0.0
            : std::real(A * std::conj(B) * std::polar(1.0, kj * (mesh[t] + mesh[t + 1])));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double power = 1.0;
    for (int d = 0; d < k; ++d) power *= kj * kj;
    return power * h * (std::norm(A) + std::norm(B) + 2.0 * sign * sinc(kj * h) * cross);
}

}  // namespace

double energy_norm(const WaveSolution& sol, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("energy_norm: derivative order must be 0, 1 or 2");
    double sq = 0.0;
    for (std::size_t t = 0; t < sol.instance.medium.c.size(); ++t)
        sq += interval_norm_sq(sol, t, k);
    return std::sqrt(std::max(0.0, sq));
}

double energy_space_norm(const WaveSolution& sol) {
    const LayeredMedium& m = sol.instance.medium;
    double sq = 0.0;
    for (std::size_t t = 0; t < m.c.size(); ++t) {
        const double a = m.a.empty() ? 1.0 : m.a[t];
        const double weight = sol.instance.omega / m.c[t];
        sq += a * interval_norm_sq(sol, t, 1);
        sq += weight * weight * interval_norm_sq(sol, t, 0);
    }
    return std::sqrt(std::max(0.0, sq));
}

ResidualReport residuals(const WaveSolution& sol) {
    const LayeredMedium& m = sol.instance.medium;
    const double omega = sol.instance.omega;
    const std::size_t intervals = m.c.size();
    auto a_of = [&m](std::size_t t) { return m.a.empty() ? 1.0 : m.a[t]; };

    auto value = [&](std::size_t t, double x) {
        const double kj = wavenumber(sol, t);
        return sol.A[t] * std::polar(1.0, kj * x) + sol.B[t] * std::polar(1.0, -kj * x);
    };
    auto flux = [&](std::size_t t, double x) {
        const double kj = wavenumber(sol, t);
        return a_of(t) * iu * kj *
               (sol.A[t] * std::polar(1.0, kj * x) - sol.B[t] * std::polar(1.0, -kj * x));
    };

    ResidualReport rep;
    for (std::size_t i = 1; i + 1 < m.mesh.size(); ++i) {
        const double x = m.mesh[i];
        rep.transmission_u = std::max(rep.transmission_u, std::abs(value(i - 1, x) - value(i, x)));
        rep.transmission_du = std::max(rep.transmission_du, std::abs(flux(i - 1, x) - flux(i, x)));
    }

    const std::size_t last = intervals - 1;
    const cplx bc_l = -flux(0, -1.0) -
                      iu * std::sqrt(a_of(0)) * (omega / m.c[0]) * value(0, -1.0) - sol.instance.g1;
    const cplx bc_r = flux(last, 1.0) -
                      iu * std::sqrt(a_of(last)) * (omega / m.c[last]) * value(last, 1.0) -
                      sol.instance.g2;
    rep.bc_left = std::abs(bc_l);
    rep.bc_right = std::abs(bc_r);

    double scale = 1.0;
    for (std::size_t i = 0; i < m.mesh.size(); ++i) {
        const std::size_t t = (i == 0) ? 0 : i - 1;
        scale = std::max(scale, std::abs(value(t, m.mesh[i])));
        scale = std::max(scale, std::abs(flux(t, m.mesh[i])) / omega);
    }
    rep.solution_scale = scale;
    rep.data_scale = std::max({1.0, std::abs(sol.instance.g1), std::abs(sol.instance.g2)});
    return rep;
}

}  // namespace helm1d

#include "helm1d/medium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace helm1d {

void snap_endpoints(LayeredMedium& m, const Tolerances& tol) {
    if (m.mesh.empty()) return;
    if (std::abs(m.mesh.front() + 1.0) <= tol.mesh_snap) m.mesh.front() = -1.0;
    if (std::abs(m.mesh.back() - 1.0) <= tol.mesh_snap) m.mesh.back() = 1.0;
}

ValidationResult validate(const LayeredMedium& m, const Tolerances& tol) {
    ValidationResult res;
    auto add = [&res](std::string msg, int index) {
        res.violations.push_back(Violation{std::move(msg), index});
    };

    if (m.mesh.size() < 2) {
        add("mesh must contain at least two points", -1);
        return res;
    }
    for (std::size_t i = 0; i < m.mesh.size(); ++i)
        if (!std::isfinite(m.mesh[i]))
            add("non-finite mesh point at index " + std::to_string(i), static_cast<int>(i));
    if (!res.ok()) return res;

    if (std::abs(m.mesh.front() + 1.0) > tol.mesh_snap)
        add("left endpoint not -1 at index 0", 0);
    if (std::abs(m.mesh.back() - 1.0) > tol.mesh_snap)
        add("right endpoint not 1 at index " + std::to_string(m.mesh.size() - 1),
            static_cast<int>(m.mesh.size() - 1));
    for (std::size_t i = 1; i < m.mesh.size(); ++i)
        if (!(m.mesh[i] > m.mesh[i - 1]))
            add("mesh not increasing at index " + std::to_string(i), static_cast<int>(i));

    if (m.c.size() + 1 != m.mesh.size())
        add("wave speed count must equal interval count " + std::to_string(m.mesh.size() - 1),
            -1);
    for (std::size_t i = 0; i < m.c.size(); ++i) {
        if (!std::isfinite(m.c[i]) || m.c[i] <= 0.0)
            add("nonpositive wave speed at " + std::to_string(i + 1), static_cast<int>(i + 1));
    }

    if (!m.a.empty()) {
        if (m.a.size() != m.c.size())
            add("diffusion count must equal interval count " + std::to_string(m.c.size()), -1);
        for (std::size_t i = 0; i < m.a.size(); ++i)
            if (!std::isfinite(m.a[i]) || m.a[i] <= 0.0)
                add("nonpositive diffusion at " + std::to_string(i + 1),
                    static_cast<int>(i + 1));
    }

    // Forced by the endpoints, but asserted: widths must telescope to 2.
    if (res.ok()) {
        double sum = 0.0;
        for (std::size_t i = 1; i < m.mesh.size(); ++i) sum += m.mesh[i] - m.mesh[i - 1];
        if (std::abs(sum - 2.0) > 1e-12) add("interval widths do not sum to 2", -1);
    }
    return res;
}

ValidationResult validate(const ProblemInstance& instance, const Tolerances& tol) {
    ValidationResult res = validate(instance.medium, tol);
    if (!std::isfinite(instance.omega) || instance.omega < tol.omega_floor)
        res.violations.push_back(
            Violation{"frequency below the configured floor " + std::to_string(tol.omega_floor),
                      -1});
    if (!std::isfinite(instance.g1.real()) || !std::isfinite(instance.g1.imag()) ||
        !std::isfinite(instance.g2.real()) || !std::isfinite(instance.g2.imag()))
        res.violations.push_back(Violation{"non-finite boundary datum", -1});
    return res;
}

cplx DerivedParams::alpha(std::size_t ell, std::size_t j) const {
    return std::polar(1.0, omega * mesh.at(j) / c.at(ell - 1));
}

std::vector<cplx> DerivedParams::sigma_tail() const {
    return std::vector<cplx>(sigma.begin() + 1, sigma.end());
}

std::vector<cplx> DerivedParams::sqrt_sigma_tail() const {
    return std::vector<cplx>(sqrt_sigma.begin() + 1, sqrt_sigma.end());
}

DerivedParams derive_params(const ProblemInstance& instance, const Tolerances& tol) {
    const ValidationResult check = validate(instance, tol);
    if (!check.ok()) throw std::invalid_argument("invalid instance: " + check.violations.front().message);

    const LayeredMedium& m = instance.medium;
    DerivedParams p;
    p.omega = instance.omega;
    p.mesh = m.mesh;
    p.c = m.c;

    const std::size_t intervals = m.c.size();
    p.h.resize(intervals);
    p.sigma.resize(intervals);
    p.sqrt_sigma.resize(intervals);
    for (std::size_t i = 0; i < intervals; ++i) {
        p.h[i] = m.mesh[i + 1] - m.mesh[i];
        // Half-phase first; sigma is its exact square.
        p.sqrt_sigma[i] = std::polar(1.0, -p.h[i] * p.omega / m.c[i]);
        p.sigma[i] = p.sqrt_sigma[i] * p.sqrt_sigma[i];
    }

    p.q.resize(intervals - 1);
    for (std::size_t i = 0; i + 1 < intervals; ++i)
        p.q[i] = (m.c[i + 1] - m.c[i]) / (m.c[i + 1] + m.c[i]);

    const auto [cmin, cmax] = std::minmax_element(m.c.begin(), m.c.end());
    p.kappa = *cmax / *cmin;
    return p;
}

double VariableAReduction::eta(double x) const {
    const std::vector<double>& xs = original_mesh;
    const std::vector<double>& ys = reduced.medium.mesh;
    if (x < xs.front() || x > xs.back()) throw std::out_of_range("eta: point outside domain");
    // Left interval at mesh points; continuity makes the choice immaterial.
    std::size_t t = std::lower_bound(xs.begin() + 1, xs.end(), x) - (xs.begin() + 1);
    if (t + 1 >= xs.size()) t = xs.size() - 2;
    const double frac = (x - xs[t]) / (xs[t + 1] - xs[t]);
    return ys[t] + frac * (ys[t + 1] - ys[t]);
}

double VariableAReduction::eta_prime(double x) const {
    const std::vector<double>& xs = original_mesh;
    if (x < xs.front() || x > xs.back()) throw std::out_of_range("eta_prime: point outside domain");
    std::size_t t = std::lower_bound(xs.begin() + 1, xs.end(), x) - (xs.begin() + 1);
    if (t + 1 >= xs.size()) t = xs.size() - 2;
    const double a_t = original_a.empty() ? 1.0 : original_a[t];
    return (2.0 / total) / a_t;
}

VariableAReduction reduce_variable_a(const ProblemInstance& instance, const Tolerances& tol) {
    const ValidationResult check = validate(instance, tol);
    if (!check.ok()) throw std::invalid_argument("invalid instance: " + check.violations.front().message);

    const LayeredMedium& m = instance.medium;
    const std::size_t intervals = m.c.size();
    std::vector<double> a = m.a;
    if (a.empty()) a.assign(intervals, 1.0);

    double total = 0.0;
    for (std::size_t i = 0; i < intervals; ++i) total += (m.mesh[i + 1] - m.mesh[i]) / a[i];

    VariableAReduction red;
    red.original_mesh = m.mesh;
    red.original_a = a;
    red.total = total;

    std::vector<double> mesh(intervals + 1);
    mesh[0] = -1.0;
    for (std::size_t i = 0; i < intervals; ++i)
        mesh[i + 1] = mesh[i] + (2.0 / total) * (m.mesh[i + 1] - m.mesh[i]) / a[i];
    mesh.back() = 1.0;  // accumulated value is within rounding of 1

    std::vector<double> c(intervals);
    for (std::size_t i = 0; i < intervals; ++i) c[i] = (2.0 / total) * m.c[i] / std::sqrt(a[i]);

    red.reduced.medium = LayeredMedium{std::move(mesh), std::move(c), {}};
    red.reduced.omega = instance.omega;
    red.reduced.g1 = (total / 2.0) * instance.g1;
    red.reduced.g2 = (total / 2.0) * instance.g2;
    return red;
}

}  // namespace helm1d

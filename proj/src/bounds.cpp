#include "helm1d/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helm1d/qrec.hpp"

namespace helm1d {

namespace {

void require_valid(const ProblemInstance& instance, const Tolerances& tol) {
    const ValidationResult res = validate(instance, tol);
    if (!res.ok())
        throw std::invalid_argument("invalid instance: " + res.violations.front().message);
}

double max_abs_g(const ProblemInstance& instance) {
    return std::max(std::abs(instance.g1), std::abs(instance.g2));
}

// c must take at most two values in strict alternation; constant media count
// as the degenerate case. Returns the common jump magnitude |q|.
double alternation_magnitude(const std::vector<double>& c) {
    const double first = c[0];
    const double second = c.size() > 1 ? c[1] : c[0];
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double ref = (i % 2 == 0) ? first : second;
        if (std::abs(c[i] - ref) > 1e-12 * ref)
            throw std::invalid_argument(
                "requires wave speed alternating between two values; interval " +
                std::to_string(i + 1) + " breaks the pattern");
    }
    return std::abs(second - first) / (second + first);
}

// 1/sqrt(1-m^2) with the resonance clamp; sets `resonant` when clamped.
double inv_sqrt_complement(double m, const Tolerances& tol, bool& resonant) {
    const double one_minus = (1.0 - m) * (1.0 + m);
    if (one_minus < tol.effectively_resonant) {
        resonant = true;
        return 1.0 / std::sqrt(tol.effectively_resonant);
    }
    return 1.0 / std::sqrt(one_minus);
}

double phase_threshold(double q, const Tolerances& tol) {
    const double gate = (q > 0.0) ? std::min(0.125, (1.0 - q * q) / (4.0 * q)) : 0.125;
    return tol.phase_split_scale * gate;
}

double alpha_interior_of(double q, double s) {
    return std::pow(0.5, 4.0 * q * s / (1.0 - q * q));
}

double alpha_boundary_of(double q, double s, double phi) {
    return std::pow(1.0 - 2.0 * q * phi / (1.0 - q * q), s / phi + 1.0);
}

}  // namespace

StabilityReport stability_upper(const ProblemInstance& instance, const Tolerances& tol) {
    require_valid(instance, tol);
    const DerivedParams p = derive_params(instance, tol);
    const QSequence s = q_sequence(p.sigma_tail(), p.q, tol);

    StabilityReport rep;
    rep.q_profile.resize(p.n());
    for (std::size_t j = 1; j <= p.n(); ++j) rep.q_profile[j - 1] = std::abs(s.Q[j]);

    double max_inv = 1.0;  // Q_0 = 0 contributes 1
    for (double m : rep.q_profile)
        max_inv = std::max(max_inv, inv_sqrt_complement(m, tol, rep.effectively_resonant));
    rep.max_inv_sqrt = max_inv;

    const double cmax = *std::max_element(p.c.begin(), p.c.end());
    const double cmin = *std::min_element(p.c.begin(), p.c.end());
    const double g = max_abs_g(instance);

    rep.c_stab_main = BoundValue{4.0 * (cmax / cmin) * max_inv, !rep.effectively_resonant,
                                 "reflection-profile stability constant", {}};
    for (int k = 0; k <= 2; ++k) {
        const double value = 4.0 * (cmax / std::pow(cmin, k)) * std::pow(instance.omega, k - 1) *
                             g * max_inv;
        rep.upper[k] = BoundValue{value, !rep.effectively_resonant,
                                  "coefficient-explicit upper bound, derivative order " +
                                      std::to_string(k),
                                  {}};
    }
    return rep;
}

std::array<double, 3> stability_lower(const WaveSolution& sol) {
    const LayeredMedium& m = sol.instance.medium;
    const double omega = sol.instance.omega;
    std::array<double, 3> lower{0.0, 0.0, 0.0};
    for (std::size_t t = 0; t < m.c.size(); ++t) {
        const double h = m.mesh[t + 1] - m.mesh[t];
        const double ratio = omega / m.c[t];
        const double phase = ratio * h;
        const double coeff = std::max(std::abs(sol.A[t]), std::abs(sol.B[t]));
        const double base = std::sqrt(2.0 / 15.0 * h) * (phase / (1.0 + phase)) * coeff;
        double power = 1.0;
        for (int k = 0; k <= 2; ++k) {
            lower[k] = std::max(lower[k], base * power);
            power *= ratio;
        }
    }
    return lower;
}

double growth_lower_bound(double omega, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("growth_lower_bound: q must lie in (0,1)");
    if (!(omega > 0.0))
        throw std::invalid_argument("growth_lower_bound: omega must be positive");
    const double front = pi * std::pow(1.0 - q, 1.5) / (9.0 * std::sqrt(5.0) * (pi + 2.0));
    const double mid = 0.5 + pi / (std::sqrt(5.0 * (1.0 - q)) * (pi + 2.0));
    return front * mid * std::pow((1.0 + q) / (1.0 - q), 0.5 * omega) / std::sqrt(omega);
}

RegimeCap bound_above_resonance(const ProblemInstance& instance, double epsilon,
                                const Tolerances& tol) {
    require_valid(instance, tol);
    if (!(epsilon > 0.0)) throw std::invalid_argument("bound_above_resonance: epsilon must be positive");
    const DerivedParams p = derive_params(instance, tol);
    for (std::size_t i = 0; i < p.h.size(); ++i)
        if (!(instance.omega * p.h[i] / p.c[i] > epsilon))
            throw std::invalid_argument("bound_above_resonance: phase at interval " +
                                        std::to_string(i + 1) + " not above the threshold");

    const double cmin = *std::min_element(p.c.begin(), p.c.end());
    double qmax = 0.0;
    for (double v : p.q) qmax = std::max(qmax, std::abs(v));

    RegimeCap cap;
    cap.N = 2.0 * instance.omega / (epsilon * cmin) - 1.0;
    cap.q_cap = (qmax == 0.0) ? 0.0 : max_modulus_closed_form(qmax, cap.N);
    cap.cap_sq = cap.q_cap * cap.q_cap;

    bool resonant = false;
    const double inv = inv_sqrt_complement(cap.q_cap, tol, resonant);
    cap.c_stab_cap = BoundValue{4.0 * p.kappa * inv, !resonant, "phase-floor growth cap", {}};
    return cap;
}

RegimeCap bound_small_step(const ProblemInstance& instance, double phi_max,
                           const Tolerances& tol) {
    require_valid(instance, tol);
    const DerivedParams p = derive_params(instance, tol);
    const double q = alternation_magnitude(p.c);
    const double gate = (q > 0.0) ? std::min(0.125, (1.0 - q * q) / (4.0 * q)) : 0.125;
    if (!(phi_max > 0.0) || phi_max > gate)
        throw std::invalid_argument("bound_small_step: phase budget must lie in (0, " +
                                    std::to_string(gate) + "]");
    for (std::size_t i = 0; i < p.h.size(); ++i)
        if (2.0 * instance.omega * p.h[i] / p.c[i] > phi_max)
            throw std::invalid_argument("bound_small_step: round-trip phase at interval " +
                                        std::to_string(i + 1) + " exceeds the budget");

    const double cmin = *std::min_element(p.c.begin(), p.c.end());
    const double s = 4.0 * instance.omega / cmin;

    RegimeCap cap;
    cap.alpha_interior = alpha_interior_of(q, s);
    cap.alpha_boundary = alpha_boundary_of(q, s, phi_max);
    const double alpha = std::min(cap.alpha_interior, cap.alpha_boundary);
    // Seed: the first reflection always has modulus exactly q.
    const double complement = (1.0 - q * q) * alpha;
    cap.cap_sq = 1.0 - complement;
    cap.q_cap = std::sqrt(std::max(0.0, cap.cap_sq));

    const bool resonant = complement < tol.effectively_resonant;
    const double inv = 1.0 / std::sqrt(std::max(complement, tol.effectively_resonant));
    cap.c_stab_cap = BoundValue{4.0 * p.kappa * inv, !resonant, "small-phase two-branch cap",
                                {"unit Taylor remainder constant; phase budget capped at 1/8"}};
    return cap;
}

StabilityReport combined_bound(const ProblemInstance& instance, const Tolerances& tol) {
    require_valid(instance, tol);
    const DerivedParams p = derive_params(instance, tol);
    const double q = alternation_magnitude(p.c);
    const double omega = instance.omega;
    const double cmin = *std::min_element(p.c.begin(), p.c.end());
    const std::size_t n = p.n();

    StabilityReport rep;
    {
        const QSequence s = q_sequence(p.sigma_tail(), p.q, tol);
        rep.q_profile.resize(n);
        for (std::size_t j = 1; j <= n; ++j) rep.q_profile[j - 1] = std::abs(s.Q[j]);
        double max_inv = 1.0;
        for (double m : rep.q_profile)
            max_inv = std::max(max_inv, inv_sqrt_complement(m, tol, rep.effectively_resonant));
        rep.max_inv_sqrt = max_inv;
        rep.c_stab_main = BoundValue{4.0 * p.kappa * max_inv, !rep.effectively_resonant,
                                     "reflection-profile stability constant", {}};
        const double g = max_abs_g(instance);
        const double cmax = p.kappa * cmin;
        for (int k = 0; k <= 2; ++k)
            rep.upper[k] = BoundValue{4.0 * (cmax / std::pow(cmin, k)) *
                                          std::pow(omega, k - 1) * g * max_inv,
                                      !rep.effectively_resonant,
                                      "coefficient-explicit upper bound, derivative order " +
                                          std::to_string(k),
                                      {}};
    }

    rep.has_majorant = true;
    rep.jump_count_cap = (q > 0.0 && n > 0)
                             ? max_modulus_closed_form(q, static_cast<double>(n))
                             : 0.0;

    const double phi_star = phase_threshold(q, tol);
    // Round-trip phases per interval, 0-based.
    std::vector<double> phases(p.h.size());
    for (std::size_t i = 0; i < p.h.size(); ++i) phases[i] = 2.0 * omega * p.h[i] / p.c[i];
    const bool all_above = std::all_of(phases.begin(), phases.end(),
                                       [phi_star](double v) { return v > phi_star; });
    const bool all_below = std::all_of(phases.begin(), phases.end(),
                                       [phi_star](double v) { return v <= phi_star; });

    if (q == 0.0) {
        // Constant speed: no reflections at all, the bound is 4 kappa = 4.
        rep.regime = all_above ? "above-resonance" : (all_below ? "small-step" : "mixed");
        rep.q_cap = 0.0;
        rep.majorant = BoundValue{4.0 * p.kappa, true, "constant-speed cap", {}};
        rep.C_q = 4.0 * p.kappa;
        rep.alpha_q = 1.0;
        return rep;
    }

    if (all_above) {
        // One-way phase floor taken from the instance itself; the margin keeps
        // the strict precondition satisfied.
        double min_phase = phases[0] / 2.0;
        for (std::size_t i = 0; i < p.h.size(); ++i)
            min_phase = std::min(min_phase, omega * p.h[i] / p.c[i]);
        const double eps = min_phase * (1.0 - tol.eps_margin);
        const RegimeCap cap = bound_above_resonance(instance, eps, tol);
        rep.regime = "above-resonance";
        rep.q_cap = cap.q_cap;
        rep.majorant = cap.c_stab_cap;
        rep.C_q = 4.0 * p.kappa * std::exp(-std::atanh(q));
        rep.alpha_q = std::exp(-2.0 * std::atanh(q) / eps);
        return rep;
    }

    if (all_below) {
        const RegimeCap cap = bound_small_step(instance, phi_star, tol);
        rep.regime = "small-step";
        rep.q_cap = cap.q_cap;
        rep.majorant = cap.c_stab_cap;
        const double om2 = 1.0 - q * q;
        if (cap.alpha_interior <= cap.alpha_boundary) {
            rep.C_q = 4.0 * p.kappa / std::sqrt(om2);
            rep.alpha_q = std::pow(2.0, -8.0 * q / om2);
        } else {
            const double x = 2.0 * q * phi_star / om2;
            rep.C_q = 4.0 * p.kappa / std::sqrt(om2 * (1.0 - x));
            rep.alpha_q = std::pow(1.0 - x, 2.0 / phi_star);
        }
        return rep;
    }

    // Mixed: walk the recursion budget in atanh coordinates. Step j of the
    // recursion is driven by interval j+1; the seed atanh(q) covers step 1,
    // whose reflection has modulus exactly q whatever its phase class.
    const double step = std::atanh(q);
    double T = step;
    const double s_full = 4.0 * omega / cmin;
    std::size_t j = 2;
    while (j <= n) {
        // Step j is driven by interval j+1, i.e. 0-based phase index j.
        if (phases[j] > phi_star) {
            T += step;
            ++j;
            continue;
        }
        // Maximal run of small steps starting at j; budget from its width.
        double width = 0.0;
        std::size_t end = j;
        while (end <= n && phases[end] <= phi_star) {
            width += p.h[end];
            ++end;
        }
        const double s_run = std::min(s_full, 2.0 * omega * width / cmin);
        const double alpha = std::min(alpha_interior_of(q, s_run),
                                      alpha_boundary_of(q, s_run, phi_star));
        T += std::acosh(1.0 / std::sqrt(alpha));
        j = end;
    }

    rep.regime = "mixed";
    // cosh(T) = 1/sqrt(1 - tanh^2 T); refine with the jump-count cap.
    bool resonant = false;
    const double inv_walk = std::cosh(T);
    const double inv_jump = inv_sqrt_complement(rep.jump_count_cap, tol, resonant);
    double inv = inv_walk;
    rep.q_cap = std::tanh(T);
    if (inv_jump < inv_walk) {
        inv = inv_jump;
        rep.q_cap = rep.jump_count_cap;
    }
    const bool clamped = resonant && inv_jump <= inv_walk;
    rep.majorant = BoundValue{4.0 * p.kappa * inv, !clamped, "partitioned phase-walk cap",
                              {"unit Taylor remainder constant on small-phase runs"}};
    rep.C_q = 4.0 * p.kappa;
    rep.alpha_q = std::exp(-T * cmin / omega);
    return rep;
}

}  // namespace helm1d

#include "helm1d/configgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "helm1d/format.hpp"
#include "helm1d/types.hpp"

namespace helm1d {

ProblemInstance gen_well_behaved(double omega, int n, double q) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("well-behaved generator requires odd n");
    if (!(q >= 0.0 && q < 1.0))
        throw std::invalid_argument("well-behaved generator requires q in [0,1)");
    if (!(omega > 0.0)) throw std::invalid_argument("frequency must be positive");

    const double c = 2.0 * omega / ((n + 1) * pi);
    std::vector<double> mesh(n + 2), speeds(n + 1);
    mesh.front() = -1.0;
    mesh.back() = 1.0;
    for (int j = 1; j <= n; ++j)
        mesh[j] = (j % 2 == 1) ? -1.0 + 2.0 * (j - q) / (n + 1) : -1.0 + 2.0 * j / (n + 1);
    for (int j = 1; j <= n + 1; ++j) speeds[j - 1] = (j % 2 == 1) ? c * (1.0 - q) : c * (1.0 + q);

    ProblemInstance inst;
    inst.medium = LayeredMedium{std::move(mesh), std::move(speeds), {}};
    inst.omega = omega;
    inst.g1 = cplx{0.0, 0.0};
    inst.g2 = cplx{1.0, 0.0};
    return inst;
}

ProblemInstance gen_critical(double omega, int k, double q) {
    std::vector<int> m(2 * std::max(k, 0) + 1, 0);
    if (k >= 2 && k % 2 == 0) m[k] = 1;  // interval k+1 carries the full period
    return gen_critical(omega, k, q, m);
}

ProblemInstance gen_critical(double omega, int k, double q, const std::vector<int>& m) {
    if (k < 2 || k % 2 == 1)
        throw std::invalid_argument("critical generator requires even k >= 2");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("critical generator requires q in (0,1)");
    if (!(omega > 0.0)) throw std::invalid_argument("frequency must be positive");

    const int n = 2 * k;
    if (m.size() != static_cast<std::size_t>(n + 1))
        throw std::invalid_argument("critical generator: phase multiplicities need one entry per interval");

    // Interval j carries a one-way phase of mu_j * pi: half-integer multiples
    // everywhere except a whole multiple at interval k+1, so the round-trip
    // factors come out -1 except +1 at position k. The width budget
    // sum h_j = 2 then pins the base speed c.
    std::vector<double> mu(n + 1);
    double budget = 0.0;
    for (int j = 1; j <= n + 1; ++j) {
        const int mj = m[j - 1];
        if (j == k + 1) {
            if (mj < 1)
                throw std::invalid_argument(
                    "critical generator: interval k+1 needs a positive whole multiplicity");
            mu[j - 1] = mj;
        } else {
            if (mj < 0)
                throw std::invalid_argument("critical generator: multiplicities must be nonnegative");
            mu[j - 1] = mj + 0.5;
        }
        budget += ((j % 2 == 1) ? (1.0 - q) : (1.0 + q)) * mu[j - 1];
    }

    const double c = 2.0 * omega / (pi * budget);
    std::vector<double> mesh(n + 2), speeds(n + 1);
    for (int j = 1; j <= n + 1; ++j) speeds[j - 1] = (j % 2 == 1) ? c * (1.0 - q) : c * (1.0 + q);

    mesh.front() = -1.0;
    for (int j = 1; j <= n + 1; ++j)
        mesh[j] = mesh[j - 1] + mu[j - 1] * pi * speeds[j - 1] / omega;
    mesh.back() = 1.0;  // the widths sum to 2 exactly in real arithmetic

    ProblemInstance inst;
    inst.medium = LayeredMedium{std::move(mesh), std::move(speeds), {}};
    inst.omega = omega;
    inst.g1 = cplx{0.0, 0.0};
    inst.g2 = cplx{1.0, 0.0};
    return inst;
}

namespace {

// Fixed bits-to-double map, identical on every platform.
double next_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

ProblemInstance gen_random(const RandomSpec& spec) {
    if (spec.n_min < 0 || spec.n_max < spec.n_min)
        throw std::invalid_argument("gen_random: invalid jump-count range");
    if (!(spec.c_min > 0.0 && spec.c_max >= spec.c_min))
        throw std::invalid_argument("gen_random: invalid speed band");
    if (!(spec.omega_min > 0.0 && spec.omega_max >= spec.omega_min))
        throw std::invalid_argument("gen_random: invalid frequency range");

    std::mt19937_64 gen(spec.seed);
    const int span = spec.n_max - spec.n_min + 1;
    const int n = spec.n_min + static_cast<int>(gen() % static_cast<std::uint64_t>(span));
    const double omega = spec.omega_min + (spec.omega_max - spec.omega_min) * next_unit(gen);

    std::vector<double> mesh;
    for (;;) {
        mesh.assign(1, -1.0);
        for (int i = 0; i < n; ++i) mesh.push_back(-1.0 + 2.0 * next_unit(gen));
        mesh.push_back(1.0);
        std::sort(mesh.begin(), mesh.end());
        double min_gap = 2.0;
        for (std::size_t i = 1; i < mesh.size(); ++i)
            min_gap = std::min(min_gap, mesh[i] - mesh[i - 1]);
        if (min_gap >= 1e-9) break;
    }

    std::vector<double> speeds(n + 1);
    const double lo = std::log(spec.c_min), hi = std::log(spec.c_max);
    for (int i = 0; i <= n; ++i) speeds[i] = std::exp(lo + (hi - lo) * next_unit(gen));

    ProblemInstance inst;
    inst.medium = LayeredMedium{std::move(mesh), std::move(speeds), {}};
    inst.omega = omega;
    inst.g1 = cplx{2.0 * next_unit(gen) - 1.0, 2.0 * next_unit(gen) - 1.0};
    inst.g2 = cplx{2.0 * next_unit(gen) - 1.0, 2.0 * next_unit(gen) - 1.0};
    return inst;
}

std::string provenance_of(const std::string& kind, double omega, double q, int n_or_k) {
    std::string out = kind + "(omega=" + format_g17(omega);
    if (kind == "random") {
        out += ", seed=" + std::to_string(n_or_k);
    } else {
        out += ", q=" + format_g17(q);
        out += (kind == "critical" ? ", k=" : ", n=") + std::to_string(n_or_k);
    }
    return out + ")";
}

}  // namespace helm1d

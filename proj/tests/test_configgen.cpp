#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "helm1d/bounds.hpp"
#include "helm1d/configgen.hpp"
#include "helm1d/medium.hpp"
#include "helm1d/qrec.hpp"
#include "support/oracle.hpp"

using namespace helm1d;
using namespace helm1d::testing;

namespace {

// Widths of the intervals straight from the mesh.
std::vector<double> widths(const ProblemInstance& inst) {
    const auto& mesh = inst.medium.mesh;
    std::vector<double> h(mesh.size() - 1);
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) h[i] = mesh[i + 1] - mesh[i];
    return h;
}

}  // namespace

TEST_CASE("tuned odd-n generator hits the single-interval-pair limit") {
    // n = 1, q = 0: base speed 2*omega/(2*pi) = 1 at omega = pi, and the one
    // interior point sits at the midpoint. Both arithmetic paths are exact.
    const auto inst = gen_well_behaved(pi, 1, 0.0);
    REQUIRE(inst.medium.mesh.size() == 3);
    REQUIRE(inst.medium.c.size() == 2);
    CHECK(inst.medium.mesh[0] == -1.0);
    CHECK(inst.medium.mesh[1] == 0.0);
    CHECK(inst.medium.mesh[2] == 1.0);
    CHECK(inst.medium.c[0] == 1.0);
    CHECK(inst.medium.c[1] == 1.0);
    CHECK(inst.omega == pi);
    CHECK(inst.g1 == cplx{0.0, 0.0});
    CHECK(inst.g2 == cplx{1.0, 0.0});
    CHECK(validate(inst).ok());
}

TEST_CASE("tuned odd-n generator rejects bad arguments") {
    CHECK_THROWS_WITH_AS(gen_well_behaved(pi, 2, 0.1), "well-behaved generator requires odd n",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_well_behaved(pi, 0, 0.1), "well-behaved generator requires odd n",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_well_behaved(pi, -3, 0.1), "well-behaved generator requires odd n",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_well_behaved(pi, 3, 1.0),
                         "well-behaved generator requires q in [0,1)", std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_well_behaved(pi, 3, -0.1),
                         "well-behaved generator requires q in [0,1)", std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_well_behaved(0.0, 3, 0.1), "frequency must be positive",
                         std::invalid_argument);
}

TEST_CASE("tuned odd-n media are resonance-free by construction") {
    const double q = 0.5;
    const auto inst = gen_well_behaved(16.0, 15, q);
    REQUIRE(validate(inst).ok());
    const auto p = derive_params(inst);
    const std::size_t n = p.n();
    REQUIRE(n == 15);

    // Every interval carries a one-way phase of exactly pi, so all round-trip
    // factors are 1 and the half-phase branch lands on -1.
    for (const cplx& s : p.sigma) CHECK(std::abs(s - cplx{1.0, 0.0}) <= 1e-12);
    for (const cplx& s : p.sqrt_sigma) CHECK(std::abs(s - cplx{-1.0, 0.0}) <= 1e-12);

    // Slow-first speeds alternate, so the jumps alternate +q, -q and the
    // widths compensate the speeds to keep the phases flat.
    const auto h = widths(inst);
    for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(p.q[j] - ((j % 2 == 0) ? q : -q)) <= 1e-14);
    for (std::size_t i = 0; i <= n; ++i) {
        const double expect = (2.0 / double(n + 1)) * ((i % 2 == 0) ? (1.0 - q) : (1.0 + q));
        CHECK(rel(h[i], expect) <= 1e-12);
    }

    // The reflection profile collapses to (q, 0, q, 0, ...): each pair of
    // opposite jumps cancels after a full period.
    const auto s = q_sequence(p.sigma_tail(), p.q);
    for (std::size_t j = 1; j <= n; ++j) {
        const double expect = (j % 2 == 1) ? q : 0.0;
        CHECK(std::abs(std::abs(s.Q[j]) - expect) <= 1e-12);
    }
    CHECK_FALSE(s.effectively_resonant());

    // Every growth factor stays under the single-jump cap 1/sqrt(1-q^2).
    const double cap = 1.0 / std::sqrt(1.0 - q * q);
    for (std::size_t m = 1; m <= n; ++m)
        CHECK(g_factor(p.sigma_tail(), p.q, m) <= cap + 1e-12);
}

TEST_CASE("tuned media keep the same scaled bound across frequencies") {
    // With n = omega - 1 the base speed 2*omega/((n+1)*pi) is frequency
    // independent, so omega * upper[0] must not drift.
    std::vector<double> scaled;
    for (double omega : {16.0, 64.0, 256.0}) {
        const int n = static_cast<int>(omega) - 1;
        const auto inst = gen_well_behaved(omega, n, 0.5);
        CHECK(rel(inst.medium.c[0], (2.0 / pi) * 0.5) <= 1e-14);
        const auto rep = stability_upper(inst);
        REQUIRE(rep.upper[0].finite);
        scaled.push_back(rep.upper[0].value * omega);
    }
    CHECK(rel(scaled[1], scaled[0]) <= 1e-10);
    CHECK(rel(scaled[2], scaled[0]) <= 1e-10);
}

TEST_CASE("resonance-engineered generator reproduces the worked example") {
    const double q = 0.5;
    const int k = 2;
    const auto inst = gen_critical(2.0, k, q);
    REQUIRE(validate(inst).ok());
    const auto p = derive_params(inst);
    const std::size_t n = p.n();
    REQUIRE(n == 4);

    // Width budget: mu = (1/2, 1/2, 1, 1/2, 1/2) against speeds alternating
    // c(1-q), c(1+q) gives budget 2.5 and base speed 1.6/pi.
    CHECK(rel(inst.medium.c[0], 0.5 * 1.6 / pi) <= 1e-13);
    CHECK(rel(inst.medium.c[1], 1.5 * 1.6 / pi) <= 1e-13);

    // Round trips are -1 except +1 at the whole-period interval k+1, and the
    // half-phase branch is -i except -1 there.
    for (std::size_t j = 0; j <= n; ++j) {
        const cplx want = (j == std::size_t(k)) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
        const cplx want_half = (j == std::size_t(k)) ? cplx{-1.0, 0.0} : cplx{0.0, -1.0};
        CHECK(std::abs(p.sigma[j] - want) <= 1e-12);
        CHECK(std::abs(p.sqrt_sigma[j] - want_half) <= 1e-12);
    }

    // Reflection moduli ride the maximizing profile up and back down.
    const auto s = q_sequence(p.sigma_tail(), p.q);
    const double want_mod[] = {0.5, 0.8, 0.5, 0.0};
    for (std::size_t j = 1; j <= n; ++j)
        CHECK(std::abs(std::abs(s.Q[j]) - want_mod[j - 1]) <= 1e-12);

    // The far-end Green column peaks at 5/3 in the middle slot.
    const auto col = green_column(p.sqrt_sigma_tail(), p.q);
    REQUIRE(col.entries.size() == 2 * n);
    CHECK(rel(std::abs(col.entries[2 * k]), 5.0 / 3.0) <= 1e-12);
}

TEST_CASE("resonance-engineered profile follows the closed-form ascent and descent") {
    for (int k : {2, 4}) {
        for (double q : {0.3, 0.5}) {
            const auto inst = gen_critical(double(k), k, q);
            const auto p = derive_params(inst);
            const auto s = q_sequence(p.sigma_tail(), p.q);
            const std::size_t n = p.n();
            REQUIRE(n == std::size_t(2 * k));
            for (std::size_t j = 1; j <= std::size_t(k); ++j)
                CHECK(rel(std::abs(s.Q[j]), max_modulus_closed_form(q, double(j))) <= 1e-12);
            for (std::size_t j = k + 1; j <= n; ++j) {
                if (j == n) {
                    // The profile closes at zero; the closed form starts at j = 1.
                    CHECK(std::abs(s.Q[j]) <= 1e-12);
                    continue;
                }
                CHECK(rel(std::abs(s.Q[j]), max_modulus_closed_form(q, double(n - j))) <=
                      1e-12);
            }
        }
    }
}

TEST_CASE("resonance-engineered generator spans the width budget exactly") {
    for (double omega : {2.0, 8.0, 32.0}) {
        for (int k : {2, 4, 8}) {
            for (double q : {0.1, 0.5, 0.9}) {
                const auto inst = gen_critical(omega, k, q);
                REQUIRE(validate(inst).ok());
                const auto& mesh = inst.medium.mesh;
                CHECK(mesh.front() == -1.0);
                CHECK(mesh.back() == 1.0);
                const auto h = widths(inst);
                const std::size_t n = h.size() - 1;
                REQUIRE(n == std::size_t(2 * k));
                for (std::size_t i = 0; i <= n; ++i) {
                    const double mu = (i == std::size_t(k)) ? 1.0 : 0.5;
                    const double expect = mu * pi * inst.medium.c[i] / omega;
                    CHECK(rel(h[i], expect) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("resonance-engineered generator validates its arguments") {
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 3, 0.5), "critical generator requires even k >= 2",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 0, 0.5), "critical generator requires even k >= 2",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 1, 0.5), "critical generator requires even k >= 2",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 2, 0.0), "critical generator requires q in (0,1)",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 2, 1.0), "critical generator requires q in (0,1)",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(0.0, 2, 0.5), "frequency must be positive",
                         std::invalid_argument);

    // Multiplicity overrides: one entry per interval, a positive whole count
    // at the full-period slot, nothing negative elsewhere.
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 2, 0.5, std::vector<int>(4, 0)),
                         "critical generator: phase multiplicities need one entry per interval",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 2, 0.5, std::vector<int>{0, 0, 0, 0, 0}),
                         "critical generator: interval k+1 needs a positive whole multiplicity",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(gen_critical(2.0, 2, 0.5, std::vector<int>{0, -1, 1, 0, 0}),
                         "critical generator: multiplicities must be nonnegative",
                         std::invalid_argument);
}

TEST_CASE("phase multiplicities stretch intervals without moving the profile") {
    const double q = 0.5;
    const int k = 2;
    const auto base = gen_critical(8.0, k, q);

    // Spelling out the default multiplicities reproduces the base instance
    // bit for bit.
    const auto same = gen_critical(8.0, k, q, std::vector<int>{0, 0, 1, 0, 0});
    CHECK(same.medium.mesh == base.medium.mesh);
    CHECK(same.medium.c == base.medium.c);
    CHECK(same.omega == base.omega);

    // Adding whole periods changes widths and speeds but leaves the phase
    // pattern, and with it the reflection profile, untouched.
    const auto wide = gen_critical(8.0, k, q, std::vector<int>{1, 0, 2, 0, 3});
    REQUIRE(validate(wide).ok());
    CHECK(wide.medium.mesh.front() == -1.0);
    CHECK(wide.medium.mesh.back() == 1.0);

    const auto pb = derive_params(base);
    const auto pw = derive_params(wide);
    const double mu[] = {1.5, 0.5, 2.0, 0.5, 3.5};
    const auto h = widths(wide);
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(rel(h[i], mu[i] * pi * wide.medium.c[i] / wide.omega) <= 1e-12);
    for (std::size_t j = 0; j < pw.sigma.size(); ++j)
        CHECK(std::abs(pw.sigma[j] - pb.sigma[j]) <= 1e-12);

    const auto sb = q_sequence(pb.sigma_tail(), pb.q);
    const auto sw = q_sequence(pw.sigma_tail(), pw.q);
    for (std::size_t j = 1; j <= pw.n(); ++j) {
        if (std::abs(sb.Q[j]) <= 1e-12)
            CHECK(std::abs(sw.Q[j]) <= 1e-12);
        else
            CHECK(rel(std::abs(sw.Q[j]), std::abs(sb.Q[j])) <= 1e-12);
    }

    const auto cb = green_column(pb.sqrt_sigma_tail(), pb.q);
    const auto cw = green_column(pw.sqrt_sigma_tail(), pw.q);
    CHECK(rel(std::abs(cw.entries[2 * k]), std::abs(cb.entries[2 * k])) <= 1e-12);
}

TEST_CASE("random generator is deterministic and respects its ranges") {
    RandomSpec spec;
    spec.seed = 12345;
    const auto a = gen_random(spec);
    const auto b = gen_random(spec);
    CHECK(a.medium.mesh == b.medium.mesh);
    CHECK(a.medium.c == b.medium.c);
    CHECK(a.omega == b.omega);
    CHECK(a.g1 == b.g1);
    CHECK(a.g2 == b.g2);

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RandomSpec s;
        s.seed = seed;
        const auto inst = gen_random(s);
        REQUIRE(validate(inst).ok());
        const std::size_t jumps = inst.medium.mesh.size() - 2;
        CHECK(jumps <= 40);
        CHECK(inst.omega >= 1.0);
        CHECK(inst.omega <= 128.0);
        for (double c : inst.medium.c) {
            CHECK(c >= 0.5 * (1.0 - 1e-12));
            CHECK(c <= 2.0 * (1.0 + 1e-12));
        }
        const auto h = widths(inst);
        CHECK(*std::min_element(h.begin(), h.end()) >= 1e-9);
        CHECK(std::abs(inst.g1.real()) <= 1.0);
        CHECK(std::abs(inst.g1.imag()) <= 1.0);
        CHECK(std::abs(inst.g2.real()) <= 1.0);
        CHECK(std::abs(inst.g2.imag()) <= 1.0);
    }

    // Degenerate ranges pin the draw exactly.
    RandomSpec narrow;
    narrow.seed = 7;
    narrow.n_min = narrow.n_max = 5;
    narrow.omega_min = narrow.omega_max = 7.0;
    const auto pinned = gen_random(narrow);
    CHECK(pinned.medium.mesh.size() == 7);
    CHECK(pinned.omega == 7.0);
}

TEST_CASE("random generator rejects inverted ranges") {
    RandomSpec bad;
    bad.n_min = -1;
    CHECK_THROWS_WITH_AS(gen_random(bad), "gen_random: invalid jump-count range",
                         std::invalid_argument);
    bad = RandomSpec{};
    bad.n_min = 5;
    bad.n_max = 2;
    CHECK_THROWS_WITH_AS(gen_random(bad), "gen_random: invalid jump-count range",
                         std::invalid_argument);
    bad = RandomSpec{};
    bad.c_min = 0.0;
    CHECK_THROWS_WITH_AS(gen_random(bad), "gen_random: invalid speed band",
                         std::invalid_argument);
    bad = RandomSpec{};
    bad.c_max = 0.25;
    CHECK_THROWS_WITH_AS(gen_random(bad), "gen_random: invalid speed band",
                         std::invalid_argument);
    bad = RandomSpec{};
    bad.omega_min = 0.0;
    CHECK_THROWS_WITH_AS(gen_random(bad), "gen_random: invalid frequency range",
                         std::invalid_argument);
}

TEST_CASE("provenance strings name the generator and its knobs") {
    CHECK(provenance_of("well-behaved", 16.0, 0.5, 3) == "well-behaved(omega=16, q=0.5, n=3)");
    CHECK(provenance_of("critical", 8.0, 0.5, 4) == "critical(omega=8, q=0.5, k=4)");
    CHECK(provenance_of("random", 2.5, 0.0, 42) == "random(omega=2.5, seed=42)");
}

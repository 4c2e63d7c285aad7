#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helm1d/configgen.hpp"
#include "helm1d/medium.hpp"
#include "helm1d/solver.hpp"
#include "support/oracle.hpp"

using namespace helm1d;
using namespace helm1d::testing;

namespace {


cplx closed_form_A1(const ProblemInstance& inst) {
    const double c = inst.medium.c.front();
    return iu * (c / (2.0 * inst.omega)) * std::exp(iu * (inst.omega / c)) * inst.g1;
}

cplx closed_form_Bnp1(const ProblemInstance& inst) {
    const double c = inst.medium.c.back();
    return iu * (c / (2.0 * inst.omega)) * std::exp(iu * (inst.omega / c)) * inst.g2;
}

double max_coeff(const WaveSolution& sol) {
    double m = 0.0;
    for (const cplx& v : sol.A) m = std::max(m, std::abs(v));
    for (const cplx& v : sol.B) m = std::max(m, std::abs(v));
    return m;
}

void check_residuals(const WaveSolution& sol, double tol) {
    const auto rep = residuals(sol);
    const double scale = std::max(rep.solution_scale, rep.data_scale);
    CHECK(rep.transmission_u <= tol * scale);
    CHECK(rep.transmission_du <= tol * scale);
    CHECK(rep.bc_left <= tol * scale);
    CHECK(rep.bc_right <= tol * scale);
}

}  // namespace

TEST_CASE("no-jump problems are solved in closed form by every path") {
    const auto inst = make_instance({-1.0, 1.0}, {1.7}, 2.25,
                                    cplx{1.0, -0.5}, cplx{0.25, 2.0});
    for (auto solve : {solve_direct, solve_green, solve_oracle}) {
        const auto sol = solve(inst, Tolerances::defaults());
        REQUIRE(sol.A.size() == 1);
        CHECK(rel(sol.A[0], closed_form_A1(inst)) < 1e-13);
        CHECK(rel(sol.B[0], closed_form_Bnp1(inst)) < 1e-13);
        CHECK_FALSE(sol.effectively_resonant);
    }
}

TEST_CASE("one-sided data in a constant medium is a single traveling wave") {
    const auto inst = make_instance({-1.0, -0.3, 0.2, 0.9, 1.0},
                                    {1.3, 1.3, 1.3, 1.3}, 3.0,
                                    cplx{0.0, 0.0}, cplx{1.0, 0.0});
    const auto sol = solve_direct(inst);
    const double expected = inst.medium.c[0] / (2.0 * inst.omega);
    for (std::size_t j = 0; j < sol.A.size(); ++j) {
        CHECK(std::abs(sol.A[j]) < 1e-14 * expected);
        CHECK(std::abs(std::abs(sol.B[j]) - expected) < 1e-13 * expected);
        CHECK(rel(sol.B[j], sol.B[0]) < 1e-12);
    }
    for (double x : {-0.99, -0.5, 0.0, 0.33, 1.0}) {
        const cplx u = evaluate(sol, {x})[0];
        CHECK(std::abs(std::abs(u) - expected) < 1e-12 * expected);
    }
}

TEST_CASE("zero data produces the zero solution") {
    const auto inst = make_instance({-1.0, -0.4, 0.5, 1.0}, {1.0, 2.5, 0.8}, 4.0,
                                    cplx{0.0, 0.0}, cplx{0.0, 0.0});
    for (auto solve : {solve_direct, solve_green, solve_oracle}) {
        const auto sol = solve(inst, Tolerances::defaults());
        for (const cplx& v : sol.A) CHECK(v == cplx{0.0, 0.0});
        for (const cplx& v : sol.B) CHECK(v == cplx{0.0, 0.0});
        CHECK(energy_space_norm(sol) == 0.0);
    }
}

TEST_CASE("structured and dense paths agree on a 20-jump medium") {
    RandomSpec spec;
    spec.seed = 77;
    spec.n_min = 20;
    spec.n_max = 20;
    const auto inst = gen_random(spec);
    const auto direct = solve_direct(inst);
    const auto green = solve_green(inst);
    const auto oracle = solve_oracle(inst);
    CHECK(vec_rel(direct.A, oracle.A) < 1e-9);
    CHECK(vec_rel(direct.B, oracle.B) < 1e-9);
    CHECK(vec_rel(green.A, oracle.A) < 1e-9);
    CHECK(vec_rel(green.B, oracle.B) < 1e-9);
}

TEST_CASE("the engineered medium amplifies boundary data geometrically") {
    const int k = 8;
    const auto inst = gen_critical(static_cast<double>(k), k, 0.5);
    const double floor_value =
        std::pow(3.0, k / 2) * (1.0 - 0.5) / (3.0 * M_PI * inst.omega);
    const auto green = solve_green(inst);
    CHECK(max_coeff(green) >= floor_value);
    const auto direct = solve_direct(inst);
    CHECK(max_coeff(direct) >= floor_value);
    CHECK(vec_rel(green.A, direct.A) < 1e-9);
}

TEST_CASE("oracle solutions satisfy interface and boundary conditions") {
    RandomSpec spec;
    spec.seed = 5;
    spec.n_min = 3;
    spec.n_max = 12;
    for (std::uint64_t s = 1; s <= 10; ++s) {
        spec.seed = s;
        const auto sol = solve_oracle(gen_random(spec));
        check_residuals(sol, 1e-11);
    }
}

TEST_CASE("variable diffusion flows through the oracle residuals") {
    const auto inst = make_instance({-1.0, -0.2, 0.5, 1.0}, {1.0, 0.7, 1.8}, 5.0,
                                    cplx{1.0, 0.25}, cplx{-0.5, 1.0}, {1.0, 3.0, 0.5});
    const auto sol = solve_oracle(inst);
    check_residuals(sol, 1e-8);
}

TEST_CASE("structured solvers refuse variable diffusion") {
    const auto inst = make_instance({-1.0, 0.0, 1.0}, {1.0, 2.0}, 2.0,
                                    cplx{1.0, 0.0}, cplx{0.0, 0.0}, {1.0, 2.0});
    CHECK_THROWS_WITH_AS(solve_direct(inst),
                         "solve_direct: requires a == 1; reduce the variable-a problem first",
                         std::invalid_argument);
    CHECK_THROWS_AS(solve_green(inst), std::invalid_argument);
}

TEST_CASE("evaluate satisfies the equation on every interval") {
    const auto inst = make_instance({-1.0, -0.35, 0.4, 1.0}, {0.9, 1.6, 0.5}, 6.0,
                                    cplx{1.0, 1.0}, cplx{0.5, -0.25});
    const auto sol = solve_direct(inst);
    // -u'' = (omega/c)^2 u pointwise away from the interfaces.
    const std::vector<double> pts{-0.9, -0.6, -0.35 + 1e-3, 0.0, 0.4 + 1e-3, 0.77};
    const auto u = evaluate(sol, pts, 0);
    const auto d2u = evaluate(sol, pts, 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double c = 0.0;
        const auto& mesh = inst.medium.mesh;
        for (std::size_t j = 0; j + 1 < mesh.size(); ++j)
            if (pts[i] >= mesh[j] && pts[i] <= mesh[j + 1]) {
                c = inst.medium.c[j];
                break;
            }
        const double ksq = (inst.omega / c) * (inst.omega / c);
        CHECK(rel(-d2u[i], ksq * u[i]) < 1e-12);
    }
}

TEST_CASE("evaluate agrees with central differences") {
    const auto inst = make_instance({-1.0, 0.1, 1.0}, {1.2, 0.8}, 4.5,
                                    cplx{0.5, 1.0}, cplx{1.0, 0.0});
    const auto sol = solve_direct(inst);
    for (double x : {-0.7, -0.2, 0.4, 0.8}) {
        const cplx du = evaluate(sol, {x}, 1)[0];
        const cplx d2u = evaluate(sol, {x}, 2)[0];
        CHECK(rel(central_diff1(sol, x), du) < 1e-5);
        CHECK(rel(central_diff2(sol, x), d2u) < 1e-5);
    }
}

TEST_CASE("evaluate uses the left interval at mesh points and guards the domain") {
    const auto inst = make_instance({-1.0, 0.0, 1.0}, {1.0, 2.0}, 3.0,
                                    cplx{1.0, 0.0}, cplx{0.0, 1.0});
    const auto sol = solve_direct(inst);
    const double x1 = 0.0;
    const cplx at_node = evaluate(sol, {x1}, 0)[0];
    const cplx from_left = evaluate(sol, {x1 - 1e-12}, 0)[0];
    CHECK(rel(at_node, from_left) < 1e-9);
    // Continuity: the right limit agrees too.
    const cplx from_right = evaluate(sol, {x1 + 1e-12}, 0)[0];
    CHECK(rel(at_node, from_right) < 1e-9);
    CHECK_THROWS_AS(evaluate(sol, {1.0 + 1e-9}, 0), std::out_of_range);
    CHECK_THROWS_AS(evaluate(sol, {-1.0 - 1e-9}, 0), std::out_of_range);
}

TEST_CASE("single-interval norms have the closed width form") {
    WaveSolution sol;
    sol.instance = make_instance({-1.0, 1.0}, {1.5}, 2.0, cplx{0.0, 0.0}, cplx{0.0, 0.0});
    sol.A = {cplx{1.0, 0.0}};
    sol.B = {cplx{0.0, 0.0}};
    // |u| = 1, so the squared norm is the width; derivatives scale by omega/c.
    CHECK(rel(energy_norm(sol, 0), std::sqrt(2.0)) < 1e-14);
    const double kj = 2.0 / 1.5;
    CHECK(rel(energy_norm(sol, 1), kj * std::sqrt(2.0)) < 1e-14);
    CHECK(rel(energy_norm(sol, 2), kj * kj * std::sqrt(2.0)) < 1e-14);
    CHECK(rel(energy_space_norm(sol), std::sqrt(2.0) * std::sqrt(2.0) * kj) < 1e-14);
}

TEST_CASE("closed-form norms agree with Simpson quadrature") {
    RandomSpec spec;
    spec.omega_max = 16.0;
    spec.n_min = 1;
    spec.n_max = 8;
    for (std::uint64_t s = 21; s <= 26; ++s) {
        spec.seed = s;
        const auto sol = solve_direct(gen_random(spec));
        for (int k = 0; k <= 2; ++k)
            CHECK(rel(energy_norm(sol, k), simpson_norm(sol, k)) < 1e-8);
        CHECK(rel(energy_space_norm(sol), simpson_energy_space(sol)) < 1e-8);
    }
}

TEST_CASE("interval quadratic forms sit above the rational minorant") {
    // 1 -+ sinc(t) >= (2/15) t^2/(1+t^2): the smallest eigenvalue of the
    // per-interval form stays above the lower-bound weight at every phase.
    for (int i = 1; i <= 6000; ++i) {
        const double t = 0.01 * i;
        const double s = std::sin(t) / t;
        const double floor_value = (2.0 / 15.0) * t * t / (1.0 + t * t);
        CHECK(1.0 - s >= floor_value);
        CHECK(1.0 + s >= floor_value);
    }
}

TEST_CASE("the dense oracle is guarded against runaway size") {
    ProblemInstance inst;
    inst.medium.mesh.push_back(-1.0);
    for (std::size_t j = 1; j <= 2001; ++j)
        inst.medium.mesh.push_back(-1.0 + 2.0 * static_cast<double>(j) / 2002.0);
    inst.medium.mesh.push_back(1.0);
    inst.medium.c.assign(2002, 1.0);
    inst.omega = 1.0;
    CHECK_THROWS_WITH_AS(solve_oracle(inst), "solve_oracle: dense cost guard, n <= 2000",
                         std::invalid_argument);
}

TEST_CASE("energy norms reject unsupported derivative orders") {
    WaveSolution sol;
    sol.instance = make_instance({-1.0, 1.0}, {1.0}, 1.0, cplx{0.0, 0.0}, cplx{0.0, 0.0});
    sol.A = {cplx{0.0, 0.0}};
    sol.B = {cplx{0.0, 0.0}};
    CHECK_THROWS_AS(energy_norm(sol, 3), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(sol, {0.0}, -1), std::invalid_argument);
}

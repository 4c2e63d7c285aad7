#pragma once

// Constructive media: the provably well-behaved alternating family (every
// layer a full half-wave, all round-trip phases 2 pi), the resonant family
// (quarter-wave stack with one half-wave defect layer), and a deterministic
// random sampler for property tests.

#include <cstdint>
#include <string>

#include "helm1d/medium.hpp"

namespace helm1d {

// n odd, q in [0,1). Speeds alternate c(1-q), c(1+q), ... (slow layer first)
// with c = 2 omega / ((n+1) pi); widths h_j = (2/(n+1))(1 -+ q) make every
// one-way phase omega h_j / c_j equal to pi, so all round-trip phases are
// trivial and the reflection profile alternates (q, 0, q, 0, ...).
// Boundary data defaults to g1 = 0, g2 = 1; adjust as needed.
ProblemInstance gen_well_behaved(double omega, int n, double q);

// k even, k >= 2, q in (0,1); n = 2k layers plus one. Same slow-first speed
// alternation with c = 2 omega / (pi (1 - q + k)); widths give a quarter-wave
// round trip (phase pi) on every layer except a half-wave layer at j = k+1,
// which flips the recursion into its descending branch and drives |Q_k| to
// the exponential closed form.
ProblemInstance gen_critical(double omega, int k, double q);

// Advanced override of the per-interval phase multiplicities: interval j
// spans a one-way phase of (m_j + 1/2) pi, except interval k+1 which spans
// m_{k+1} pi whole (m_{k+1} >= 1). The width budget pins c. The default
// choice above is m = 0 everywhere with m_{k+1} = 1.
ProblemInstance gen_critical(double omega, int k, double q, const std::vector<int>& m);

struct RandomSpec {
    std::uint64_t seed = 1;
    int n_min = 0;
    int n_max = 40;
    double omega_min = 1.0;
    double omega_max = 128.0;
    double c_min = 0.5;
    double c_max = 2.0;
};

// Deterministic per seed and across platforms: a fixed 64-bit generator with
// an explicit bits-to-double map (53 high bits / 2^53), n uniform, interior
// mesh points sorted uniform with a minimal-gap retry, speeds log-uniform,
// boundary data uniform in the unit square per component.
ProblemInstance gen_random(const RandomSpec& spec);

// Human-readable tag naming the generator and parameters, stored in emitted
// configuration files.
std::string provenance_of(const std::string& kind, double omega, double q, int n_or_k);

}  // namespace helm1d

#pragma once

#include <cstddef>
#include <string>

namespace helm1d {

// Central knobs for every numerical gate in the library. Defaults are the
// documented contract values; a JSON file (see from_json_file) can override
// any subset, and the CLI honors the HELM1D_TOL_FILE environment variable.
struct Tolerances {
    // Frequencies below this floor are rejected at validation.
    double omega_floor = 1e-8;

    // Mesh endpoints within this distance of -1 / +1 are snapped exactly;
    // larger deviations are validation errors.
    double mesh_snap = 1e-12;

    // 1 - |Q_j|^2 (or a scaled elimination pivot) below this value marks the
    // instance effectively resonant: bounds become one-sided intervals and
    // the CLI signals the clamp through its exit code.
    double effectively_resonant = 1e-14;

    // Admissible deviation of |sigma_j| from 1 for raw recursion inputs.
    double sigma_unit = 1e-12;

    // Product accumulation in the Green-column formulas switches from plain
    // complex products to log-magnitude + phase sums above this n.
    std::size_t log_product_threshold = 64;

    // The combined stability bound splits intervals into "above resonance"
    // and "small step" at round-trip phase phi_star = phase_split_scale *
    // min(1/8, (1-q^2)/(4q)).
    double phase_split_scale = 0.5;

    // Relative safety margin applied when deriving the above-resonance eps
    // from an instance's own smallest phase.
    double eps_margin = 1e-9;

    static const Tolerances& defaults();

    // Defaults overridden by the JSON file at `path`. Unknown keys are
    // rejected so typos cannot silently disable a gate.
    static Tolerances from_json_file(const std::string& path);

    // defaults(), or from_json_file(HELM1D_TOL_FILE) when the variable is set.
    static Tolerances from_environment();
};

}  // namespace helm1d

#pragma once

#include <string>

#include "helm1d/medium.hpp"

namespace helm1d {

// Reads a problem instance from a JSON file. The file must hold an object
// with keys "omega" (positive number), "mesh" (array of numbers), "c"
// (array of length |mesh| - 1), optional "a" (same length as "c"),
// "g1" and "g2" (each a [re, im] pair), and an optional "provenance"
// string. Unknown keys are rejected so that typos surface as errors
// instead of silently falling back to defaults.
ProblemInstance load_instance(const std::string& path);

// Writes an instance in the same schema. The "a" array is emitted only
// when the instance carries one, and "provenance" only when nonempty.
void save_instance(const ProblemInstance& instance, const std::string& path,
                   const std::string& provenance = "");

}  // namespace helm1d

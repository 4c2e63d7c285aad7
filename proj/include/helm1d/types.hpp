#pragma once

#include <complex>
#include <string>
#include <vector>

namespace helm1d {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

// A single validation failure. `index` is the offending position in the
// relevant array (1-based interval / jump numbering where that is the natural
// unit, mesh index for mesh problems); -1 for global problems.
struct Violation {
    std::string message;
    int index = -1;
};

}  // namespace helm1d

#pragma once

// Construction of the linear systems: the symmetric block-tridiagonal
// coefficient matrix, its diagonal scaling, the two-entry right-hand side,
// and the dense transmission system used as the independent oracle path.
// Plus the tridiagonal determinant recursion and last-column cofactors.

#include <cstddef>
#include <ostream>
#include <vector>

#include "helm1d/linalg.hpp"
#include "helm1d/medium.hpp"
#include "helm1d/types.hpp"

namespace helm1d {

struct Block2x2 {
    cplx a11{0.0, 0.0}, a12{0.0, 0.0}, a21{0.0, 0.0}, a22{0.0, 0.0};
};

// The 2n x 2n symmetric tridiagonal system whose inverse maps boundary data
// to interior coefficients. Diagonal blocks are the reflections
// W^(j) = [[q_j, sqrt(1-q_j^2)], [sqrt(1-q_j^2), -q_j]]; the upper off-blocks
// N^(j) have the single entry -1/sqrt(sigma_j) at block position (2,1).
struct BlockTridiagonalSystem {
    std::size_t n = 0;
    std::vector<Block2x2> diag_blocks;  // W^(1..n)
    std::vector<Block2x2> off_blocks;   // N^(1..n-1)

    // Scalar bands of the assembled matrix: diagonal (q_1,-q_1,...,q_n,-q_n)
    // and off-diagonal alternating sqrt(1-q_j^2) with -1/sqrt(sigma_j).
    std::vector<cplx> diagonal() const;
    std::vector<cplx> offdiagonal() const;

    DenseMatrix dense() const;  // test/oracle path only
};

// Throws on n = 0 (the no-jump problem is solved in closed form, no matrix).
BlockTridiagonalSystem build_system(const DerivedParams& params);

// Diagonal matrix D with |entries_k| = sqrt(speed of the owning interval);
// pattern alpha_{1,1} sqrt(c_1), sqrt(c_2)/alpha_{2,1}, alpha_{2,2} sqrt(c_2),
// ..., alpha_{n,n} sqrt(c_n), sqrt(c_{n+1})/alpha_{n+1,n}.
struct DiagonalScaling {
    std::vector<cplx> entries;  // size 2n
};

DiagonalScaling build_scaling(const DerivedParams& params);

// Right-hand side: nonzero only in the first and last slot. Also carries the
// boundary-determined coefficients A_1 = i (c_1/(2 omega)) e^{i omega/c_1} g1
// and B_{n+1} analogously with c_{n+1}, g2 (these are data, not unknowns).
struct RhsVector {
    std::vector<cplx> r;  // size 2n; r_1 = A_1/c_1, r_{2n} = B_{n+1}/c_{n+1}
    cplx A1{0.0, 0.0};
    cplx Bnp1{0.0, 0.0};
};

RhsVector build_rhs(const ProblemInstance& instance, const DerivedParams& params);

// Dense (2n+2) x (2n+2) system over the stacked unknowns
// (A_1, B_1, ..., A_{n+1}, B_{n+1}): one impedance row per endpoint and a
// value/flux continuity row pair per interior mesh point. Supports variable
// diffusion a (wavenumbers omega / (sqrt(a_j) c_j)); rows are scaled by
// 1/(i omega) so the flux rows carry (sqrt(a_j)/c_j) factors directly.
struct RawTransmissionSystem {
    DenseMatrix matrix;
    std::vector<cplx> rhs;
};

RawTransmissionSystem build_raw_system(const ProblemInstance& instance,
                                       const DerivedParams& params);

// Determinant of the symmetric tridiagonal matrix with the given diagonal and
// off-diagonal, via the three-term recursion d_m = g_m d_{m-1} - b_{m-1}^2 d_{m-2}.
cplx det_tridiag(const std::vector<cplx>& diag, const std::vector<cplx>& off);

// Determinant of the matrix with (1-based) row i and the last column removed:
// (prod_{l=i}^{N-1} b_l) * d_{i-1} with d_0 = 1. Throws if i is out of range.
cplx cofactor_last_col(const std::vector<cplx>& diag, const std::vector<cplx>& off,
                       std::size_t i);

// Line-oriented debug dump: one "row col re im" line per nonzero entry,
// 1-based indices, %.17g-equivalent number formatting.
void dump_matrix(std::ostream& out, const DenseMatrix& m);

}  // namespace helm1d

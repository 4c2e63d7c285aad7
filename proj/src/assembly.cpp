#include "helm1d/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "helm1d/format.hpp"

namespace helm1d {

std::vector<cplx> BlockTridiagonalSystem::diagonal() const {
    std::vector<cplx> d(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        d[2 * j] = diag_blocks[j].a11;
        d[2 * j + 1] = diag_blocks[j].a22;
    }
    return d;
}

std::vector<cplx> BlockTridiagonalSystem::offdiagonal() const {
    std::vector<cplx> off(2 * n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        off[2 * j] = diag_blocks[j].a12;
        if (j + 1 < n) off[2 * j + 1] = off_blocks[j].a21;
    }
    return off;
}

DenseMatrix BlockTridiagonalSystem::dense() const {
    DenseMatrix m(2 * n);
    const std::vector<cplx> d = diagonal();
    const std::vector<cplx> off = offdiagonal();
    for (std::size_t i = 0; i < 2 * n; ++i) m.at(i, i) = d[i];
    for (std::size_t i = 0; i + 1 < 2 * n; ++i) {
        m.at(i, i + 1) = off[i];
        m.at(i + 1, i) = off[i];
    }
    return m;
}

BlockTridiagonalSystem build_system(const DerivedParams& params) {
    const std::size_t n = params.n();
    if (n == 0)
        throw std::invalid_argument("build_system: no jumps; the single-interval problem has a closed form");

    BlockTridiagonalSystem sys;
    sys.n = n;
    sys.diag_blocks.resize(n);
    sys.off_blocks.resize(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        const double qj = params.q[j];
        const double bj = std::sqrt(1.0 - qj * qj);
        sys.diag_blocks[j] = Block2x2{qj, bj, bj, -qj};
    }
    // Off-block j couples block rows j and j+1 (1-based); its single entry
    // uses the half-phase of sigma_j, i.e. sqrt_sigma[j] in 0-based storage.
    for (std::size_t j = 0; j + 1 < n; ++j)
        sys.off_blocks[j].a21 = -1.0 / params.sqrt_sigma[j + 1];
    return sys;
}

DiagonalScaling build_scaling(const DerivedParams& params) {
    const std::size_t n = params.n();
    DiagonalScaling d;
    d.entries.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        // 1-based pattern: entry 2i+1 = alpha_{i+1,i+1} sqrt(c_{i+1}),
        // entry 2i+2 = sqrt(c_{i+2}) / alpha_{i+2,i+1}.
        d.entries[2 * i] = params.alpha(i + 1, i + 1) * std::sqrt(params.c[i]);
        d.entries[2 * i + 1] = std::sqrt(params.c[i + 1]) / params.alpha(i + 2, i + 1);
    }
    return d;
}

RhsVector build_rhs(const ProblemInstance& instance, const DerivedParams& params) {
    const std::size_t n = params.n();
    const double omega = params.omega;
    const double c1 = params.c.front();
    const double cl = params.c.back();

    RhsVector rhs;
    rhs.A1 = iu * (c1 / (2.0 * omega)) * std::polar(1.0, omega / c1) * instance.g1;
    rhs.Bnp1 = iu * (cl / (2.0 * omega)) * std::polar(1.0, omega / cl) * instance.g2;
    if (n > 0) {
        rhs.r.assign(2 * n, cplx{0.0, 0.0});
        rhs.r.front() = rhs.A1 / c1;
        rhs.r.back() = rhs.Bnp1 / cl;
    }
    return rhs;
}

RawTransmissionSystem build_raw_system(const ProblemInstance& instance,
                                       const DerivedParams& params) {
    const std::size_t intervals = params.c.size();
    const std::size_t n = intervals - 1;
    const double omega = params.omega;
    const std::vector<double>& a_in = instance.medium.a;

    // Wavenumber and flux weight per interval; a defaults to 1.
    std::vector<double> k(intervals), w(intervals);
    for (std::size_t j = 0; j < intervals; ++j) {
        const double aj = a_in.empty() ? 1.0 : a_in[j];
        k[j] = omega / (std::sqrt(aj) * params.c[j]);
        w[j] = std::sqrt(aj) / params.c[j];
    }

    const std::size_t dim = 2 * intervals;
    RawTransmissionSystem raw;
    raw.matrix = DenseMatrix(dim);
    raw.rhs.assign(dim, cplx{0.0, 0.0});

    // Unknown layout: (A_1, B_1, A_2, B_2, ..., A_{n+1}, B_{n+1}).
    // All rows are scaled by 1/(i omega).

    // Left impedance row: -2 (sqrt(a_1)/c_1) e^{-i k_1} A_1 = g1/(i omega).
    raw.matrix.at(0, 0) = -2.0 * w[0] * std::polar(1.0, -k[0]);
    raw.rhs[0] = instance.g1 / (iu * omega);

    // Interior interfaces x_i, i = 1..n: value row then flux row, with the
    // left interval's terms positive and the right interval's negative.
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = params.mesh[i];
        const std::size_t left = i - 1, right = i;
        const cplx el = std::polar(1.0, k[left] * x);
        const cplx er = std::polar(1.0, k[right] * x);
        const std::size_t row_u = 2 * i - 1, row_f = 2 * i;

        raw.matrix.at(row_u, 2 * left) = el;
        raw.matrix.at(row_u, 2 * left + 1) = 1.0 / el;
        raw.matrix.at(row_u, 2 * right) = -er;
        raw.matrix.at(row_u, 2 * right + 1) = -1.0 / er;

        raw.matrix.at(row_f, 2 * left) = w[left] * el;
        raw.matrix.at(row_f, 2 * left + 1) = -w[left] / el;
        raw.matrix.at(row_f, 2 * right) = -w[right] * er;
        raw.matrix.at(row_f, 2 * right + 1) = w[right] / er;
    }

    // Right impedance row: -2 (sqrt(a_{n+1})/c_{n+1}) e^{-i k_{n+1}} B_{n+1}.
    raw.matrix.at(dim - 1, dim - 1) = -2.0 * w[intervals - 1] * std::polar(1.0, -k[intervals - 1]);
    raw.rhs[dim - 1] = instance.g2 / (iu * omega);
    return raw;
}

cplx det_tridiag(const std::vector<cplx>& diag, const std::vector<cplx>& off) {
    if (off.size() + 1 != diag.size())
        throw std::invalid_argument("det_tridiag: off-diagonal must be one shorter than diagonal");
    cplx prev2{1.0, 0.0};  // empty matrix
    cplx prev1 = diag[0];
    for (std::size_t m = 1; m < diag.size(); ++m) {
        const cplx cur = diag[m] * prev1 - off[m - 1] * off[m - 1] * prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    return prev1;
}

cplx cofactor_last_col(const std::vector<cplx>& diag, const std::vector<cplx>& off,
                       std::size_t i) {
    const std::size_t dim = diag.size();
    if (i < 1 || i > dim) throw std::out_of_range("cofactor_last_col: row index out of range");
    // Leading principal determinant of order i-1 via the same recursion.
    cplx prev2{1.0, 0.0};
    cplx prev1{1.0, 0.0};
    for (std::size_t m = 0; m + 1 < i; ++m) {
        const cplx cur =
            (m == 0) ? diag[0] : diag[m] * prev1 - off[m - 1] * off[m - 1] * prev2;
        prev2 = prev1;
        prev1 = cur;
    }
    cplx prod{1.0, 0.0};
    for (std::size_t l = i; l <= dim - 1; ++l) prod *= off[l - 1];
    return prod * prev1;
}

void dump_matrix(std::ostream& out, const DenseMatrix& m) {
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) {
            const cplx v = m.at(i, j);
            if (v == cplx{0.0, 0.0}) continue;
            out << (i + 1) << ' ' << (j + 1) << ' ' << format_g17(v.real()) << ' '
                << format_g17(v.imag()) << '\n';
        }
}

}  // namespace helm1d

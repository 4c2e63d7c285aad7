#include "helm1d/qrec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helm1d {

double QSequence::max_abs() const {
    double m = 0.0;
    for (const cplx& v : Q) m = std::max(m, std::abs(v));
    return m;
}

bool QSequence::effectively_resonant(const Tolerances& tol) const {
    for (const cplx& v : Q) {
        const double mod = std::abs(v);
        if (1.0 - mod * mod < tol.effectively_resonant) return true;
    }
    return false;
}

QSequence q_sequence(const std::vector<cplx>& sigma, const std::vector<double>& q,
                     const Tolerances& tol) {
    if (sigma.size() != q.size())
        throw std::invalid_argument("q_sequence: sigma and q must have equal length");
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (!(std::abs(q[j]) < 1.0))
            throw std::invalid_argument("q_sequence: |q| must be below 1 at position " +
                                        std::to_string(j + 1));
        if (std::abs(std::abs(sigma[j]) - 1.0) > tol.sigma_unit)
            throw std::invalid_argument("q_sequence: sigma must have unit modulus at position " +
                                        std::to_string(j + 1));
    }

    QSequence s;
    s.sigma = sigma;
    s.q = q;
    s.Q.assign(q.size() + 1, cplx{0.0, 0.0});
    s.Qprime.assign(q.size() + 1, cplx{0.0, 0.0});

    // Each step is a Moebius map of the previous value, so Q_j is the
    // composed map applied to Q_0 = 0. We march the composed 2x2 state
    // (a z + b) / (c z + d) instead of feeding each rounded Q_j back in:
    // past a near-resonant peak the steps expand perturbations by roughly
    // (1 - q^2) / |1 + q Q|^2 per step, and the one rounding that storing
    // the peak as a double forces would be amplified far above the accuracy
    // the profile checks rely on. Emitting every Q_j as a single division of
    // the running state keeps that rounding out of the recursion.
    cplx a{1.0, 0.0}, b{0.0, 0.0};
    cplx c{0.0, 0.0}, d{1.0, 0.0};
    for (std::size_t j = 1; j <= q.size(); ++j) {
        const double qj = q[j - 1];
        const cplx sg = sigma[j - 1];
        const cplx na = a + qj * c;
        const cplx nb = b + qj * d;
        const cplx nc = sg * (qj * a + c);
        const cplx nd = sg * (qj * b + d);
        a = na;
        b = nb;
        c = nc;
        d = nd;
        // Power-of-two rescaling is exact and keeps long products in range.
        const double m = std::max({std::abs(a.real()), std::abs(a.imag()),
                                   std::abs(b.real()), std::abs(b.imag()),
                                   std::abs(c.real()), std::abs(c.imag()),
                                   std::abs(d.real()), std::abs(d.imag())});
        if (m > 0x1p+300 || (m > 0.0 && m < 0x1p-300)) {
            const double sc = std::ldexp(1.0, -std::ilogb(m));
            a *= sc;
            b *= sc;
            c *= sc;
            d *= sc;
        }
        // The sigma-free part is again in the closed unit disc; rounding can
        // push the modulus epsilon past 1, which we clamp back.
        cplx qprime = sg * (b / d);
        const double mod = std::abs(qprime);
        if (mod > 1.0) qprime /= mod;
        s.Qprime[j] = qprime;
        s.Q[j] = qprime / sg;
    }
    return s;
}

cplx p_tilde(const std::vector<cplx>& sigma, const std::vector<double>& q,
             const Tolerances& tol) {
    const QSequence s = q_sequence(sigma, q, tol);
    cplx prod{1.0, 0.0};
    for (std::size_t j = 1; j < q.size(); ++j) prod *= 1.0 + q[j] * s.Q[j];
    return prod;
}

cplx det_M(const std::vector<cplx>& sigma, const std::vector<double>& q, bool reduced,
           const Tolerances& tol) {
    const std::size_t n = q.size();
    if (n < 2) throw std::invalid_argument("det_M: needs at least two jumps");
    const QSequence s = q_sequence(sigma, q, tol);
    cplx det{(n % 2 == 0) ? 1.0 : -1.0, 0.0};
    for (std::size_t j = 1; j < n; ++j) det *= 1.0 + q[j] * s.Q[j];
    if (reduced) det *= -sigma[n - 1] * s.Q[n];
    return det;
}

namespace {

// Last column of the inverse via the explicit product representation. Uses
// suffix products S_m = prod_{l=m}^n f_l of the per-step factors
// f_l = sqrt(1-q_l^2) / ((1 + q_l Q_{l-1}) sqrt_sigma_{l-1}), where the
// sqrt_sigma factor is absent for l = 1 (sigma_0 never enters).
std::vector<cplx> last_column(const std::vector<cplx>& sqrt_sigma, const std::vector<double>& q,
                              bool log_mode, const Tolerances& tol) {
    const std::size_t n = q.size();
    std::vector<cplx> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = sqrt_sigma[j] * sqrt_sigma[j];
    const QSequence s = q_sequence(sigma, q, tol);

    std::vector<cplx> entries(2 * n);
    if (!log_mode) {
        std::vector<cplx> factors(n);
        for (std::size_t l = 1; l <= n; ++l) {
            cplx f = std::sqrt(1.0 - q[l - 1] * q[l - 1]) / (1.0 + q[l - 1] * s.Q[l - 1]);
            if (l >= 2) f /= sqrt_sigma[l - 2];
            factors[l - 1] = f;
        }
        // suffix[m-1] = S_m, with S_{n+1} = 1 implicit.
        std::vector<cplx> suffix(n + 1);
        suffix[n] = cplx{1.0, 0.0};
        for (std::size_t m = n; m >= 1; --m) suffix[m - 1] = factors[m - 1] * suffix[m];

        entries[0] = suffix[0];
        for (std::size_t m = 1; m <= n; ++m) {
            entries[2 * m - 1] = -suffix[m] * s.Qprime[m];
            if (m < n) entries[2 * m] = suffix[m] * sqrt_sigma[m - 1];
        }
        return entries;
    }

    // Log accumulation: track log|S| and arg(S) as suffix sums.
    std::vector<double> logmag(n + 1, 0.0), phase(n + 1, 0.0);
    for (std::size_t m = n; m >= 1; --m) {
        const std::size_t l = m;
        const cplx denom = 1.0 + q[l - 1] * s.Q[l - 1];
        double lm = 0.5 * std::log1p(-q[l - 1] * q[l - 1]) - std::log(std::abs(denom));
        double ph = -std::arg(denom);
        if (l >= 2) ph -= std::arg(sqrt_sigma[l - 2]);
        logmag[m - 1] = logmag[m] + lm;
        phase[m - 1] = phase[m] + ph;
    }
    auto suffix_at = [&](std::size_t m) {
        return std::exp(logmag[m]) * std::polar(1.0, phase[m]);
    };
    entries[0] = suffix_at(0);
    for (std::size_t m = 1; m <= n; ++m) {
        entries[2 * m - 1] = -suffix_at(m) * s.Qprime[m];
        if (m < n) entries[2 * m] = suffix_at(m) * sqrt_sigma[m - 1];
    }
    return entries;
}

}  // namespace

GreenColumn green_column(const std::vector<cplx>& sqrt_sigma, const std::vector<double>& q,
                         ColumnSide which, ProductMode mode, const Tolerances& tol) {
    const std::size_t n = q.size();
    if (n == 0) throw std::invalid_argument("green_column: needs at least one jump");
    if (sqrt_sigma.size() != n)
        throw std::invalid_argument("green_column: sqrt_sigma and q must have equal length");

    const bool log_mode =
        mode == ProductMode::log_accumulated ||
        (mode == ProductMode::automatic && n > tol.log_product_threshold);

    GreenColumn col;
    col.which = which;
    if (which == ColumnSide::last) {
        col.entries = last_column(sqrt_sigma, q, log_mode, tol);
        return col;
    }

    // First column: reverse the medium. The reversed matrix is the flip
    // conjugate of the original one, so its inverse's last column read
    // backwards is the original inverse's first column. The reversed last
    // phase slot never enters the result and is set to 1.
    std::vector<double> q_rev(n);
    std::vector<cplx> ss_rev(n, cplx{1.0, 0.0});
    for (std::size_t j = 1; j <= n; ++j) q_rev[j - 1] = -q[n - j];
    for (std::size_t j = 1; j <= n - 1; ++j) ss_rev[j - 1] = sqrt_sigma[n - j - 1];

    const std::vector<cplx> rev = last_column(ss_rev, q_rev, log_mode, tol);
    col.entries.resize(2 * n);
    for (std::size_t i = 1; i <= 2 * n; ++i) col.entries[i - 1] = rev[2 * n - i];
    return col;
}

double g_factor(const std::vector<cplx>& sigma, const std::vector<double>& q, std::size_t m,
                const Tolerances& tol) {
    const std::size_t n = q.size();
    if (m < 1 || m > n) throw std::out_of_range("g_factor: m must lie in 1..n");
    const QSequence s = q_sequence(sigma, q, tol);
    // Log form keeps long products of near-resonant factors in range.
    double logmag = 0.0;
    for (std::size_t l = n - m + 1; l <= n; ++l)
        logmag += 0.5 * std::log1p(-q[l - 1] * q[l - 1]) -
                  std::log(std::abs(1.0 + q[l - 1] * s.Q[l - 1]));
    return std::exp(logmag);
}

std::vector<cplx> sigma_hat(const std::vector<double>& q, cplx sigma_last) {
    const std::size_t n = q.size();
    if (n == 0) throw std::invalid_argument("sigma_hat: empty jump sequence");
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i] == 0.0)
            throw std::invalid_argument("sigma_hat: sign undefined at vanishing jump " +
                                        std::to_string(i + 1) + "; perturb the input");
        if (!(std::abs(q[i]) < 1.0))
            throw std::invalid_argument("sigma_hat: |q| must be below 1");
    }
    std::vector<cplx> sig(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        sig[i] = (q[i] * q[i + 1] > 0.0) ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    sig[n - 1] = sigma_last;
    return sig;
}

double max_modulus_closed_form(double q, double j) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("max_modulus_closed_form: q must lie in [0,1)");
    if (!(j > 0.0)) throw std::invalid_argument("max_modulus_closed_form: j must be positive");
    const double r = std::tanh(j * std::atanh(q));
    return r < 1.0 ? r : std::nextafter(1.0, 0.0);
}

double max_modulus_complement(double q, double j) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("max_modulus_complement: q must lie in [0,1)");
    if (!(j > 0.0)) throw std::invalid_argument("max_modulus_complement: j must be positive");
    // 1 - tanh(T) = 2 e^{-2T} / (1 + e^{-2T}).
    const double e = std::exp(-2.0 * j * std::atanh(q));
    return 2.0 * e / (1.0 + e);
}

double growth_majorant(double q_tilde, double q, int m) {
    if (!(q_tilde >= 0.0 && q_tilde < 1.0))
        throw std::invalid_argument("growth_majorant: seed must lie in [0,1)");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("growth_majorant: q must lie in (0,1)");
    if (m < 1) throw std::invalid_argument("growth_majorant: m must be positive");
    const double r = std::tanh(std::atanh(q_tilde) + (m - 1) * std::atanh(q));
    return r < 1.0 ? r : std::nextafter(1.0, 0.0);
}

}  // namespace helm1d

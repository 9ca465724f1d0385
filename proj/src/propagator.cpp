#include "tmjc/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace tmjc {

namespace {

// Frobenius norm of the strict upper triangle (times sqrt 2): the quantity
// a Jacobi sweep drives to zero.
double off_diag_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            s += a[i * n + j] * a[i * n + j];
    return std::sqrt(2.0 * s);
}

} // namespace

EigenDecomposition eigendecompose(const SymMatrix& h) {
    const std::size_t n = h.dim();
    EigenDecomposition d;
    d.dim = n;
    d.eigenvalues.assign(n, 0.0);
    d.eigenvectors.assign(n * n, 0.0);
    if (n == 0)
        return d;

    std::vector<double> a(h.data().begin(), h.data().end());
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        v[i * n + i] = 1.0;

    const double tol = 1e-12 * h.frobenius_norm();
    const int max_sweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_diag_norm(a, n) <= tol) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0)
                    continue;
                // Rotation angle that annihilates a_pq (Rutishauser form,
                // numerically stable for both tiny and huge tau).
                const double tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {  // A <- A G
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- G^T A
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {  // V <- V G
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && off_diag_norm(a, n) > tol)
        throw ConvergenceError("Jacobi eigensolver did not converge within " +
                               std::to_string(max_sweeps) + " sweeps");

    // Ascending eigenvalue order; stable sort keeps degenerate pairs in a
    // reproducible order.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
    for (std::size_t k = 0; k < n; ++k) {
        d.eigenvalues[k] = a[perm[k] * n + perm[k]];
        for (std::size_t i = 0; i < n; ++i)
            d.eigenvectors[i * n + k] = v[i * n + perm[k]];
    }
    return d;
}

StateVector evolve(const EigenDecomposition& d, const StateVector& psi0, double t) {
    const std::size_t n = d.dim;
    if (psi0.size() != n)
        throw std::invalid_argument("state vector dimension does not match decomposition");
    // c = V^T psi0, c_k *= exp(-i E_k t), psi = V c.
    StateVector c(n, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i)
            acc += d.vec(i, k) * psi0[i];
        const double phase = -d.eigenvalues[k] * t;
        c[k] = acc * std::complex<double>{std::cos(phase), std::sin(phase)};
    }
    StateVector psi(n, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k)
            acc += d.vec(i, k) * c[k];
        psi[i] = acc;
    }
    return psi;
}

double nyquist_dt(const SymMatrix& h) {
    const auto b = h.gershgorin_bounds();
    const double spread = b.hi - b.lo;
    if (!(spread > 0.0))
        return std::numeric_limits<double>::infinity();
    // Fastest beat frequency is at most the spectral spread; a quarter
    // period of it cannot skip an oscillation extremum.
    return std::numbers::pi / (2.0 * spread);
}

StateVector rk4_evolve(const SymMatrix& h, const StateVector& psi0, double t_end,
                       double dt) {
    const std::size_t n = h.dim();
    if (psi0.size() != n)
        throw std::invalid_argument("state vector dimension does not match Hamiltonian");
    if (!(dt > 0.0) || t_end < 0.0)
        throw std::invalid_argument("rk4_evolve needs dt > 0 and t_end >= 0");

    StateVector y = psi0;
    StateVector k1(n), k2(n), k3(n), k4(n), tmp(n);
    // f(y) = -i H y
    auto rhs = [&](const StateVector& in, StateVector& out) {
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                acc += h(i, j) * in[j];
            out[i] = std::complex<double>{acc.imag(), -acc.real()};  // * -i
        }
    };
    auto step = [&](double hstep) {
        rhs(y, k1);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + 0.5 * hstep * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + 0.5 * hstep * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + hstep * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += (hstep / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    };

    // Hit t_end exactly: whole steps, then one short remainder step if the
    // division is not exact.
    const double ratio = t_end / dt;
    long long nfull = std::llround(ratio);
    double remainder = 0.0;
    if (nfull < 0 || std::abs(nfull * dt - t_end) > 1e-9 * std::max(1.0, t_end)) {
        nfull = static_cast<long long>(std::floor(ratio));
        remainder = t_end - static_cast<double>(nfull) * dt;
    }
    for (long long i = 0; i < nfull; ++i)
        step(dt);
    if (remainder > 1e-15 * std::max(1.0, t_end))
        step(remainder);
    return y;
}

OccupationTrace occupation_trace(const EigenDecomposition& d, const Manifold& m,
                                 const StateVector& psi0, std::span<const double> times,
                                 std::span<const BasisState> track) {
    if (psi0.size() != m.size() || d.dim != m.size())
        throw std::invalid_argument("manifold, decomposition and state sizes disagree");
    OccupationTrace tr;
    tr.times.assign(times.begin(), times.end());
    const std::size_t ns = tr.times.size();
    tr.p_excited.assign(ns, 0.0);
    tr.n_mode1.assign(ns, 0.0);
    tr.n_mode2.assign(ns, 0.0);
    tr.tracked_states.assign(track.begin(), track.end());
    std::vector<std::size_t> tracked_idx;
    for (const BasisState& s : track)
        tracked_idx.push_back(m.index_of(s));
    tr.tracked.assign(track.size(), std::vector<double>(ns, 0.0));

    // Each sample is an independent exact evolution; slots are written
    // independently, so the parallel fill is bitwise reproducible.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(ns); ++si) {
        const StateVector psi = evolve(d, psi0, tr.times[static_cast<std::size_t>(si)]);
        double px = 0.0, nm1 = 0.0, nm2 = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const double w = std::norm(psi[i]);
            const BasisState& s = m.state(i);
            if (s.level == Level::X)
                px += w;
            nm1 += w * s.n1;
            nm2 += w * s.n2;
        }
        tr.p_excited[si] = px;
        tr.n_mode1[si] = nm1;
        tr.n_mode2[si] = nm2;
        for (std::size_t k = 0; k < tracked_idx.size(); ++k)
            tr.tracked[k][si] = std::norm(psi[tracked_idx[k]]);
    }
    return tr;
}

} // namespace tmjc

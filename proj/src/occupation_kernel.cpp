#include "tmjc/occupation_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tmjc/hamiltonian.hpp"

namespace tmjc {

OccupationKernel::OccupationKernel(const EigenDecomposition& d, const Manifold& m,
                                   std::size_t initial_index, double amp_cut) {
    const std::size_t n = d.dim;
    if (m.size() != n)
        throw std::invalid_argument("manifold and decomposition sizes disagree");
    if (initial_index >= n)
        throw std::out_of_range("initial state index out of range");

    const std::vector<std::size_t> xs = m.excited_indices();
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k)
        c[k] = d.vec(initial_index, k);

    // M_kl = c_k c_l (V^T P_x V)_kl; diagonal gives the constant offset,
    // each off-diagonal pair one cosine at the eigenvalue gap.
    std::vector<double> freq, amp;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k; l < n; ++l) {
            double b = 0.0;
            for (std::size_t s : xs)
                b += d.vec(s, k) * d.vec(s, l);
            const double mkl = c[k] * c[l] * b;
            if (k == l) {
                constant_ += mkl;
            } else if (mkl != 0.0) {
                freq.push_back(d.eigenvalues[l] - d.eigenvalues[k]);
                amp.push_back(2.0 * mkl);
            }
        }
    }

    // Drop the weakest terms as long as their combined weight stays below
    // amp_cut; evaluation error is bounded by the dropped weight.
    std::vector<std::size_t> order(freq.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(amp[x]) < std::abs(amp[y]);
    });
    std::vector<bool> drop(freq.size(), false);
    double dropped = 0.0;
    for (std::size_t i : order) {
        if (dropped + std::abs(amp[i]) > amp_cut)
            break;
        dropped += std::abs(amp[i]);
        drop[i] = true;
    }
    for (std::size_t i = 0; i < freq.size(); ++i) {
        if (!drop[i]) {
            freq_.push_back(freq[i]);
            amp_.push_back(amp[i]);
        }
    }
}

double OccupationKernel::dominant_beat_frequency() const {
    double best = 0.0, best_amp = -1.0;
    for (std::size_t i = 0; i < freq_.size(); ++i) {
        if (std::abs(amp_[i]) > best_amp) {
            best_amp = std::abs(amp_[i]);
            best = freq_[i];
        }
    }
    return best;
}

double OccupationKernel::value(double t) const {
    double acc = constant_;
    for (std::size_t i = 0; i < freq_.size(); ++i)
        acc += amp_[i] * std::cos(freq_[i] * t);
    return acc;
}

OccupationKernel::Max OccupationKernel::sample_max(double horizon, double dt) const {
    Max best{value(0.0), 0.0};
    if (!(horizon > 0.0) || !(dt > 0.0) || !std::isfinite(dt) || freq_.empty())
        return best;

    const std::size_t nsamples = static_cast<std::size_t>(std::floor(horizon / dt)) + 1;
    const std::size_t nterms = freq_.size();
    constexpr std::size_t block = 1024;
    const std::size_t nblocks = (nsamples + block - 1) / block;

    // Per-block winners, reduced serially afterwards: the outcome cannot
    // depend on thread count or scheduling.
    std::vector<double> block_val(nblocks, -1.0);
    std::vector<std::size_t> block_idx(nblocks, 0);

    std::vector<double> alpha(nterms);
    for (std::size_t i = 0; i < nterms; ++i)
        alpha[i] = std::cos(freq_[i] * dt);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(nblocks); ++bi) {
        const std::size_t m0 = static_cast<std::size_t>(bi) * block;
        const std::size_t count = std::min(block, nsamples - m0);
        const double t0 = static_cast<double>(m0) * dt;

        // Fresh std::cos seed per block: the recurrence runs at most 1024
        // steps before re-anchoring, so rounding error stays ~1e-13.
        std::vector<double> cur(nterms), prev(nterms);
        for (std::size_t i = 0; i < nterms; ++i) {
            cur[i] = std::cos(freq_[i] * t0);
            prev[i] = std::cos(freq_[i] * (t0 - dt));  // cos is even: valid at m0 = 0
        }

        double vbest = -1.0;
        std::size_t mbest = m0;
        for (std::size_t mm = 0; mm < count; ++mm) {
            double acc = constant_;
            for (std::size_t i = 0; i < nterms; ++i) {
                acc += amp_[i] * cur[i];
                const double next = 2.0 * alpha[i] * cur[i] - prev[i];
                prev[i] = cur[i];
                cur[i] = next;
            }
            if (acc > vbest) {
                vbest = acc;
                mbest = m0 + mm;
            }
        }
        block_val[bi] = vbest;
        block_idx[bi] = mbest;
    }

    double vbest = best.value;
    std::size_t mbest = 0;
    for (std::size_t bi = 0; bi < nblocks; ++bi) {
        if (block_val[bi] > vbest) {
            vbest = block_val[bi];
            mbest = block_idx[bi];
        }
    }
    return {vbest, static_cast<double>(mbest) * dt};
}

OccupationKernel::Max OccupationKernel::max_over(double horizon, double dt) const {
    Max best = sample_max(horizon, dt);
    if (!(horizon > 0.0) || !(dt > 0.0) || !std::isfinite(dt) || freq_.empty())
        return best;

    // Golden-section refinement inside the bracketing samples.
    double a = std::max(0.0, best.t - dt);
    double b = std::min(horizon, best.t + dt);
    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = value(c), fd = value(d);
    while (b - a > 1e-6) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = value(d);
        }
    }
    const double tm = 0.5 * (a + b);
    const double fm = value(tm);
    if (fm > best.value)
        best = {fm, tm};
    return best;
}

OccupationKernel::Max max_occupation(const ModelParams& p, const BasisState& initial,
                                     double horizon) {
    if (initial.level != Level::G)
        throw std::invalid_argument("initial state must be ground-level");
    if (horizon < 0.0)
        throw std::invalid_argument("horizon must be >= 0");
    const Manifold m = Manifold::enumerate(initial.excitation());
    const SymMatrix h = build_hamiltonian(m, p);
    const EigenDecomposition d = eigendecompose(h);
    const OccupationKernel kernel(d, m, m.index_of(initial));
    return kernel.max_over(horizon, nyquist_dt(h));
}

double default_horizon(int n_total) { return n_total <= 2 ? 5000.0 : 50000.0; }

} // namespace tmjc

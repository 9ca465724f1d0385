#include "tmjc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tmjc {

namespace {

void validate_grid(const ScanGrid& grid) {
    if (grid.delta1_values.empty() || grid.delta2_values.empty())
        throw std::invalid_argument("scan grid axes must be non-empty");
    if (!(grid.horizon >= 0.0))
        throw std::invalid_argument("scan horizon must be >= 0");
    if (grid.initial.level != Level::G)
        throw std::invalid_argument("scan initial state must be ground-level");
    grid.params.validate();
}

// One grid point: exact maximum occupation over the scan window.
OccupationKernel::Max scan_point(const Manifold& m, std::size_t j0,
                                 const ScanGrid& grid, double d1, double d2) {
    ModelParams p = grid.params;
    p.delta1 = d1;
    p.delta2 = d2;
    const SymMatrix h = build_hamiltonian(m, p);
    const EigenDecomposition dec = eigendecompose(h);
    const OccupationKernel kernel(dec, m, j0);
    return kernel.max_over(grid.horizon, nyquist_dt(h));
}

ScanResult prepare_result(const ScanGrid& grid) {
    ScanResult r;
    r.grid = grid;
    const std::size_t npoints = grid.delta1_values.size() * grid.delta2_values.size();
    r.max_occupation.assign(npoints, 0.0);
    r.argmax_time.assign(npoints, 0.0);
    r.degenerate_vicinity.assign(npoints, 0);
    const double lam = std::max(grid.params.lambda1, grid.params.lambda2);
    for (std::size_t i1 = 0; i1 < grid.delta1_values.size(); ++i1)
        for (std::size_t i2 = 0; i2 < grid.delta2_values.size(); ++i2)
            r.degenerate_vicinity[i1 * grid.delta2_values.size() + i2] =
                std::abs(grid.delta1_values[i1] - grid.delta2_values[i2]) < 0.5 * lam ? 1
                                                                                      : 0;
    return r;
}

std::string point_error(const ScanGrid& grid, std::size_t i1, std::size_t i2,
                        const char* what) {
    return "scan point (delta1=" + std::to_string(grid.delta1_values[i1]) +
           ", delta2=" + std::to_string(grid.delta2_values[i2]) + ") failed: " + what;
}

} // namespace

ScanResult scan_detunings(const ScanGrid& grid) {
    validate_grid(grid);
    const Manifold m = Manifold::enumerate(grid.initial.excitation());
    const std::size_t j0 = m.index_of(grid.initial);
    ScanResult r = prepare_result(grid);

    const std::ptrdiff_t n1 = static_cast<std::ptrdiff_t>(grid.delta1_values.size());
    const std::ptrdiff_t n2 = static_cast<std::ptrdiff_t>(grid.delta2_values.size());
    // Collect per-point failures and report the first one in grid order, so
    // the error does not depend on scheduling.
    std::vector<std::string> errors(static_cast<std::size_t>(n1 * n2));

#pragma omp parallel for collapse(2) schedule(dynamic)
    for (std::ptrdiff_t i1 = 0; i1 < n1; ++i1) {
        for (std::ptrdiff_t i2 = 0; i2 < n2; ++i2) {
            const std::size_t at = static_cast<std::size_t>(i1 * n2 + i2);
            try {
                const auto mx = scan_point(m, j0, grid, grid.delta1_values[i1],
                                           grid.delta2_values[i2]);
                r.max_occupation[at] = mx.value;
                r.argmax_time[at] = mx.t;
            } catch (const std::exception& e) {
                errors[at] = point_error(grid, static_cast<std::size_t>(i1),
                                         static_cast<std::size_t>(i2), e.what());
            }
        }
    }
    for (const std::string& e : errors)
        if (!e.empty())
            throw std::runtime_error(e);
    return r;
}

ScanResult scan_detunings_serial(const ScanGrid& grid) {
    validate_grid(grid);
    const Manifold m = Manifold::enumerate(grid.initial.excitation());
    const std::size_t j0 = m.index_of(grid.initial);
    ScanResult r = prepare_result(grid);

    const std::size_t n2 = grid.delta2_values.size();
    for (std::size_t i1 = 0; i1 < grid.delta1_values.size(); ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            try {
                const auto mx = scan_point(m, j0, grid, grid.delta1_values[i1],
                                           grid.delta2_values[i2]);
                r.max_occupation[i1 * n2 + i2] = mx.value;
                r.argmax_time[i1 * n2 + i2] = mx.t;
            } catch (const std::exception& e) {
                throw std::runtime_error(point_error(grid, i1, i2, e.what()));
            }
        }
    }
    return r;
}

DetuningCut extract_cut(const ScanResult& r, std::size_t i2) {
    if (i2 >= r.grid.delta2_values.size())
        throw std::out_of_range("cut index out of range");
    DetuningCut cut;
    cut.delta1 = r.grid.delta1_values;
    cut.values.reserve(cut.delta1.size());
    for (std::size_t i1 = 0; i1 < cut.delta1.size(); ++i1)
        cut.values.push_back(r.max_at(i1, i2));
    cut.delta2 = r.grid.delta2_values[i2];
    cut.params = r.grid.params;
    cut.initial = r.grid.initial;
    return cut;
}

namespace {

// Least-squares fit of a * w / (w + x^2) to the cut; for fixed w the
// optimal amplitude is closed-form, so only w needs a line search.
struct LorentzFit {
    double a = 1.0;
    double w = 1.0;
    double operator()(double x) const { return a * w / (w + x * x); }
};

LorentzFit fit_background(const std::vector<double>& x, const std::vector<double>& v,
                          const std::vector<bool>& include, double w_seed) {
    auto amp_for = [&](double w) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!include[i])
                continue;
            const double phi = w / (w + x[i] * x[i]);
            num += v[i] * phi;
            den += phi * phi;
        }
        return den > 0.0 ? std::clamp(num / den, 0.0, 1.2) : 1.0;
    };
    auto sse_for = [&](double w) {
        const double a = amp_for(w);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!include[i])
                continue;
            const double e = v[i] - a * w / (w + x[i] * x[i]);
            s += e * e;
        }
        return s;
    };
    double lo = w_seed / 8.0, hi = w_seed * 8.0;
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = sse_for(c), fd = sse_for(d);
    while (hi - lo > 1e-6 * w_seed) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = sse_for(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = sse_for(d);
        }
    }
    LorentzFit fit;
    fit.w = 0.5 * (lo + hi);
    fit.a = amp_for(fit.w);
    return fit;
}

} // namespace

std::vector<ResonancePeak> find_peaks(const DetuningCut& cut, double prominence) {
    if (cut.delta1.size() != cut.values.size())
        throw std::invalid_argument("cut axis and values lengths disagree");
    if (!(prominence > 0.0))
        throw std::invalid_argument("prominence must be > 0");
    const std::size_t n = cut.delta1.size();
    if (n < 3)
        return {};

    // Background: the single-mode tail of the map, seeded at the analytic
    // width 4 lambda1^2 n1.  Fit, drop outliers (the peaks), fit again.
    const double w_seed =
        std::max(4.0 * cut.params.lambda1 * cut.params.lambda1 * std::max(cut.initial.n1, 1),
                 1e-6);
    std::vector<bool> include(n, true);
    LorentzFit bg = fit_background(cut.delta1, cut.values, include, w_seed);
    for (std::size_t i = 0; i < n; ++i)
        include[i] = cut.values[i] - bg(cut.delta1[i]) < 0.5 * prominence;
    bg = fit_background(cut.delta1, cut.values, include, w_seed);

    // Topographic prominence: height above the higher of the two key
    // saddles, walking each way to the nearest strictly higher sample (or
    // the border).  Ripple crests riding on a broad resonance sit barely
    // above their saddle and get merged into it; real towers do not.
    auto topo_prominence = [&](std::size_t i) {
        const double v0 = cut.values[i];
        double base_l = v0;
        for (std::size_t j = i; j > 0; --j) {
            const double v = cut.values[j - 1];
            if (v > v0)
                break;
            base_l = std::min(base_l, v);
        }
        double base_r = v0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = cut.values[j];
            if (v > v0)
                break;
            base_r = std::min(base_r, v);
        }
        return v0 - std::max(base_l, base_r);
    };

    std::vector<ResonancePeak> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double vm = cut.values[i - 1], v0 = cut.values[i], vp = cut.values[i + 1];
        if (!(v0 > vm && v0 >= vp))
            continue;
        if (v0 - bg(cut.delta1[i]) < prominence)
            continue;
        if (topo_prominence(i) < prominence)
            continue;

        // Parabolic sub-grid refinement through the three bracketing samples.
        const double denom = vm - 2.0 * v0 + vp;
        double offset = 0.0, height = v0;
        if (denom < 0.0) {
            offset = 0.5 * (vm - vp) / denom;
            offset = std::clamp(offset, -1.0, 1.0);
            height = v0 - 0.25 * (vm - vp) * offset;
        }
        const double dx_l = cut.delta1[i] - cut.delta1[i - 1];
        const double dx_r = cut.delta1[i + 1] - cut.delta1[i];
        const double x_hat =
            cut.delta1[i] + offset * (offset >= 0.0 ? dx_r : dx_l);

        // Full width at half prominence: walk to the crossings of the
        // midpoint between refined height and local background.
        const double level = 0.5 * (height + bg(x_hat));
        double left = cut.delta1.front();
        for (std::size_t j = i; j > 0; --j) {
            if (cut.values[j - 1] < level) {
                const double f = (cut.values[j] - level) / (cut.values[j] - cut.values[j - 1]);
                left = cut.delta1[j] - f * (cut.delta1[j] - cut.delta1[j - 1]);
                break;
            }
        }
        double right = cut.delta1.back();
        for (std::size_t j = i; j + 1 < n; ++j) {
            if (cut.values[j + 1] < level) {
                const double f = (cut.values[j] - level) / (cut.values[j] - cut.values[j + 1]);
                right = cut.delta1[j] + f * (cut.delta1[j + 1] - cut.delta1[j]);
                break;
            }
        }

        peaks.push_back({x_hat, height, right - left, 0});
    }

    // Photon-order labels from the leading-order resonance lines
    // delta1 = delta2 (N-1)/N, N = 2..n1, assigned jointly so that orders
    // increase across the cut; ties prefer the lower order.
    const int n_max = cut.initial.n1;
    std::vector<int> orders;
    std::vector<double> pos;
    for (int N = 2; N <= n_max; ++N) {
        orders.push_back(N);
        pos.push_back(cut.delta2 * (N - 1) / static_cast<double>(N));
    }
    const std::size_t np = peaks.size(), nc = orders.size();
    if (nc == 0)
        return peaks;
    if (np > nc) {
        for (auto& pk : peaks) {
            std::size_t best = 0;
            for (std::size_t j = 1; j < nc; ++j)
                if (std::abs(pk.delta1 - pos[j]) < std::abs(pk.delta1 - pos[best]))
                    best = j;
            pk.order_n = orders[best];
        }
        return peaks;
    }
    // Monotone minimum-cost assignment of peak i to line j (i < i' implies
    // j < j'), by sequence alignment where candidates may be skipped.
    constexpr double inf = 1e300;
    std::vector<std::vector<double>> f(np + 1, std::vector<double>(nc + 1, inf));
    for (std::size_t j = 0; j <= nc; ++j)
        f[0][j] = 0.0;
    for (std::size_t i = 1; i <= np; ++i)
        for (std::size_t j = i; j <= nc; ++j)
            f[i][j] = std::min(f[i][j - 1],
                               f[i - 1][j - 1] + std::abs(peaks[i - 1].delta1 - pos[j - 1]));
    std::size_t i = np, j = nc;
    while (i > 0) {
        if (j > i && f[i][j - 1] <= f[i][j]) {
            --j;  // skipping the higher line pushes assignments to lower N
        } else {
            peaks[i - 1].order_n = orders[j - 1];
            --i;
            --j;
        }
    }
    return peaks;
}

// ---- adiabatic elimination ------------------------------------------------

std::vector<BasisState> reduced_states(int n1, int n2) {
    if (n1 < 2)
        throw std::invalid_argument("two-photon reduction needs n1 >= 2");
    if (n2 < 0)
        throw std::invalid_argument("photon numbers must be >= 0");
    std::vector<BasisState> s;
    if (n2 > 0)
        s.push_back({Level::X, n1, n2 - 1});
    s.push_back({Level::X, n1 - 1, n2});
    s.push_back({Level::G, n1, n2});
    s.push_back({Level::X, n1 - 2, n2 + 1});
    s.push_back({Level::G, n1 - 1, n2 + 1});
    s.push_back({Level::G, n1 - 2, n2 + 2});
    return s;
}

SymMatrix reduced_hamiltonian6(int n1, int n2, const ModelParams& p) {
    p.validate();
    const std::vector<BasisState> kets = reduced_states(n1, n2);
    const double d1 = p.delta1, d2 = p.delta2;
    const double l1 = p.lambda1, l2 = p.lambda2;

    SymMatrix h(kets.size());
    // Diagonal: energy deficit of each ket relative to |g,n1,n2>.
    const double e0 = n1 * d1 + n2 * d2;
    for (std::size_t i = 0; i < kets.size(); ++i)
        h.set(i, i, e0 - (kets[i].n1 * d1 + kets[i].n2 * d2));
    // One-photon couplings along the exchange chain.
    auto at = [&](const BasisState& s) {
        return static_cast<std::size_t>(
            std::find(kets.begin(), kets.end(), s) - kets.begin());
    };
    const BasisState g0{Level::G, n1, n2}, x2{Level::X, n1 - 1, n2},
        x4{Level::X, n1 - 2, n2 + 1}, g5{Level::G, n1 - 1, n2 + 1},
        g6{Level::G, n1 - 2, n2 + 2};
    if (n2 > 0)
        h.set(at({Level::X, n1, n2 - 1}), at(g0), l2 * std::sqrt(double(n2)));
    h.set(at(x2), at(g0), l1 * std::sqrt(double(n1)));
    h.set(at(x2), at(g5), l2 * std::sqrt(double(n2 + 1)));
    h.set(at(x4), at(g5), l1 * std::sqrt(double(n1 - 1)));
    h.set(at(x4), at(g6), l2 * std::sqrt(double(n2 + 2)));
    return h;
}

EffectiveTwoLevel adiabatic_elimination(int n1, int n2, const ModelParams& p) {
    p.validate();
    if (n1 < 2)
        throw std::invalid_argument("two-photon reduction needs n1 >= 2");
    const double d1 = p.delta1, d2 = p.delta2;
    if (d1 == 0.0 || d2 == 0.0)
        throw std::domain_error(
            "adiabatic elimination diverges at zero detuning (delta1, delta2 != 0)");
    if (d1 == d2)
        throw std::domain_error("adiabatic elimination diverges at delta1 = delta2");
    const double l1s = p.lambda1 * p.lambda1, l2s = p.lambda2 * p.lambda2;

    EffectiveTwoLevel eff;
    // Second-order Stark shifts of the resonant pair...
    eff.e1 = -l2s * n2 / d2 - l1s * n1 / d1;
    eff.e2 = (2.0 * d1 - d2) + l1s * (n1 - 1) / (d2 - d1) +
             l2s * (n2 + 2) / (2.0 * (d2 - d1));
    // ...and the two-photon coupling through the intermediate excited kets.
    eff.omega_eff = 2.0 * l1s * p.lambda2 * std::sqrt(double(n1 - 1)) *
                    std::sqrt(double(n1)) * std::sqrt(double(n2 + 1)) /
                    (d1 * (d1 - d2));
    eff.predicted_delta2 = resonance_predict(n1, n2, p.lambda1, p.lambda2, d1);
    eff.validity_ratio =
        std::max(p.lambda1 * std::sqrt(double(n1)), p.lambda2 * std::sqrt(double(n2))) /
        std::abs(d1 - d2);
    eff.beyond_validity = eff.validity_ratio > 0.3;
    return eff;
}

double resonance_predict(int n1, int n2, double lambda1, double lambda2,
                         double delta1) {
    if (n1 < 2)
        throw std::invalid_argument("two-photon reduction needs n1 >= 2");
    if (delta1 == 0.0)
        throw std::domain_error("resonance prediction diverges at delta1 = 0");
    return 2.0 * delta1 +
           (lambda1 * lambda1 * (2 * n1 - 1) + lambda2 * lambda2 * (n2 + 1)) / delta1;
}

BasisState n_photon_final_state(const BasisState& initial, int order_n) {
    if (initial.level != Level::G)
        throw std::invalid_argument("N-photon resonance starts from a ground-level ket");
    if (order_n < 1)
        throw std::invalid_argument("photon order must be >= 1");
    if (initial.n1 < order_n)
        throw std::invalid_argument("initial ket holds fewer than N photons in mode 1");
    return {Level::X, initial.n1 - order_n, initial.n2 + order_n - 1};
}

double dichromatic_predict(double delta1, double omega_rabi) {
    if (!(omega_rabi > 0.0))
        throw std::invalid_argument("dichromatic_predict needs omega_rabi > 0");
    return std::abs(delta1) - omega_rabi;
}

} // namespace tmjc

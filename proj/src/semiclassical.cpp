#include "tmjc/semiclassical.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

namespace tmjc {

double DriveField::envelope(double t) const {
    switch (shape) {
        case DriveShape::CwStep:
            return t >= t_on ? amplitude : 0.0;
        case DriveShape::Gaussian: {
            const double u = (t - t_center) / duration;
            return amplitude * std::exp(-0.5 * u * u);
        }
    }
    return 0.0;
}

namespace {

double max_rate(std::span<const DriveField> drives) {
    double mx = 0.0;
    for (const DriveField& d : drives)
        mx = std::max({mx, std::abs(d.detuning), std::abs(d.amplitude)});
    return mx;
}

} // namespace

double default_step(std::span<const DriveField> drives) {
    const double mx = max_rate(drives);
    return mx > 0.0 ? 0.01 / mx : 0.01;
}

TwoLevelTrace simulate_two_level(std::span<const DriveField> drives, double t_end,
                                 double dt) {
    if (drives.empty() || drives.size() > 2)
        throw std::invalid_argument("simulate_two_level takes one or two drives");
    for (const DriveField& d : drives) {
        if (d.amplitude < 0.0)
            throw std::invalid_argument("drive amplitude must be >= 0");
        if (d.shape == DriveShape::Gaussian && !(d.duration > 0.0))
            throw std::invalid_argument("Gaussian drive needs duration > 0");
    }
    if (!(dt > 0.0) || t_end < 0.0)
        throw std::invalid_argument("simulate_two_level needs dt > 0 and t_end >= 0");
    const double mx = max_rate(drives);
    if (mx > 0.0 && dt > 0.05 / mx)
        std::fprintf(stderr,
                     "warning: step %.3g is coarser than 0.05/max_rate = %.3g; "
                     "two-level integration may be inaccurate\n",
                     dt, 0.05 / mx);

    using C = std::complex<double>;
    struct State {
        C cg, cx;
    };
    // i cx' = -(1/2) od(t) cg,  i cg' = -(1/2) conj(od(t)) cx,
    // od(t) = sum_i Omega_i(t) e^{-i delta_i t}.
    auto rhs = [&](double t, const State& y) {
        C od{0.0, 0.0};
        for (const DriveField& d : drives)
            od += d.envelope(t) * std::polar(1.0, -d.detuning * t);
        const C half_i{0.0, 0.5};
        return State{half_i * std::conj(od) * y.cx, half_i * od * y.cg};
    };

    State y{{1.0, 0.0}, {0.0, 0.0}};
    TwoLevelTrace tr;
    tr.times.push_back(0.0);
    tr.p_excited.push_back(0.0);

    auto step = [&](double t, double h) {
        const State k1 = rhs(t, y);
        const State k2 = rhs(t + 0.5 * h, {y.cg + 0.5 * h * k1.cg, y.cx + 0.5 * h * k1.cx});
        const State k3 = rhs(t + 0.5 * h, {y.cg + 0.5 * h * k2.cg, y.cx + 0.5 * h * k2.cx});
        const State k4 = rhs(t + h, {y.cg + h * k3.cg, y.cx + h * k3.cx});
        y.cg += (h / 6.0) * (k1.cg + 2.0 * k2.cg + 2.0 * k3.cg + k4.cg);
        y.cx += (h / 6.0) * (k1.cx + 2.0 * k2.cx + 2.0 * k3.cx + k4.cx);
    };

    const double ratio = t_end / dt;
    long long nfull = std::llround(ratio);
    double remainder = 0.0;
    if (nfull < 0 || std::abs(nfull * dt - t_end) > 1e-9 * std::max(1.0, t_end)) {
        nfull = static_cast<long long>(std::floor(ratio));
        remainder = t_end - static_cast<double>(nfull) * dt;
    }
    for (long long i = 0; i < nfull; ++i) {
        step(static_cast<double>(i) * dt, dt);
        tr.times.push_back(static_cast<double>(i + 1) * dt);
        tr.p_excited.push_back(std::norm(y.cx));
    }
    if (remainder > 1e-15 * std::max(1.0, t_end)) {
        step(static_cast<double>(nfull) * dt, remainder);
        tr.times.push_back(t_end);
        tr.p_excited.push_back(std::norm(y.cx));
    }
    return tr;
}

double rabi_analytic(double omega, double delta, double t) {
    if (!(omega > 0.0))
        throw std::invalid_argument("rabi_analytic needs omega > 0");
    const double w = std::hypot(omega, delta);
    const double s = std::sin(0.5 * w * t);
    return (omega * omega) / (w * w) * s * s;
}

double super_resonance_pulsed(double delta1, double omega1_max) {
    if (!(omega1_max > 0.0))
        throw std::invalid_argument("super_resonance_pulsed needs omega1_max > 0");
    return delta1 + std::hypot(delta1, omega1_max);
}

double super_resonance_cw(double omega0, double delta1) {
    if (!(omega0 > 0.0))
        throw std::invalid_argument("super_resonance_cw needs omega0 > 0");
    return std::sqrt(3.0 * omega0 * omega0 + 4.0 * delta1 * delta1);
}

} // namespace tmjc

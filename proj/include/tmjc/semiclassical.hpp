#pragma once
// Semiclassical two-level dynamics under one or two classical drive fields,
// in the frame rotating at the emitter frequency (rotating-wave
// approximation per field):
//   i c_x' = -(1/2) sum_i Omega_i(t) e^{-i delta_i t} c_g
//   i c_g' = -(1/2) sum_i Omega_i(t) e^{+i delta_i t} c_x
// Covers plain Rabi oscillations, dichromatic driving, and swing-up
// excitation with detuned pulse pairs.

#include <span>
#include <vector>

namespace tmjc {

enum class DriveShape { CwStep, Gaussian };

struct DriveField {
    DriveShape shape = DriveShape::CwStep;
    double amplitude = 0.0;  // peak Rabi rate Omega
    double detuning = 0.0;   // delta = omega_L - omega_0
    double t_on = 0.0;       // CwStep: switch-on time
    double t_center = 0.0;   // Gaussian: pulse centre
    double duration = 0.0;   // Gaussian: width sigma

    double envelope(double t) const;
};

struct TwoLevelTrace {
    std::vector<double> times;
    std::vector<double> p_excited;
};

// Largest integration step that resolves every drive: 0.01 / max_i
// max(|delta_i|, Omega_i).  simulate_two_level warns on stderr when asked
// to run coarser than 5x this.
double default_step(std::span<const DriveField> drives);

// Fixed-step RK4 from |g> at t = 0; records every step.  One or two drives.
TwoLevelTrace simulate_two_level(std::span<const DriveField> drives, double t_end,
                                 double dt);

// Closed-form detuned Rabi oscillation of a cw drive switched on at t = 0:
// P_x(t) = Omega^2/(Omega^2+delta^2) sin^2(sqrt(Omega^2+delta^2) t / 2).
double rabi_analytic(double omega, double delta, double t);

// Second-colour placement that doubles the generalised Rabi frequency.
// Pulsed (swing-up) condition: delta2 = delta1 + sqrt(delta1^2 + Omega^2).
double super_resonance_pulsed(double delta1, double omega1_max);
// cw condition: delta2 = sqrt(3 Omega0^2 + 4 delta1^2).
double super_resonance_cw(double omega0, double delta1);

} // namespace tmjc

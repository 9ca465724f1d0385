#pragma once
// Resonance-map scans, peak extraction and classification, and the
// adiabatic-elimination reduction of a few-photon resonance to an effective
// two-level system.

#include <cstdint>
#include <vector>

#include "hamiltonian.hpp"
#include "manifold.hpp"
#include "occupation_kernel.hpp"
#include "sym_matrix.hpp"

namespace tmjc {

// Detuning grid for a (delta1, delta2) resonance map.  lambda1/lambda2 come
// from params; the delta fields of params are ignored.
struct ScanGrid {
    std::vector<double> delta1_values;
    std::vector<double> delta2_values;
    ModelParams params;
    BasisState initial;     // ground-level ket; fixes the manifold
    double horizon = 0.0;   // scan window [0, horizon] per grid point
};

struct ScanResult {
    ScanGrid grid;
    // Row-major [i1 * n2 + i2] over (delta1 index, delta2 index).
    std::vector<double> max_occupation;
    std::vector<double> argmax_time;
    // Set where |delta1 - delta2| < lambda_max / 2: too close to mode
    // degeneracy for the off-resonant analysis to mean much.
    std::vector<std::uint8_t> degenerate_vicinity;

    std::size_t cols() const { return grid.delta2_values.size(); }
    double max_at(std::size_t i1, std::size_t i2) const {
        return max_occupation[i1 * cols() + i2];
    }
    double time_at(std::size_t i1, std::size_t i2) const {
        return argmax_time[i1 * cols() + i2];
    }
};

// OpenMP-parallel scan; bitwise identical to scan_detunings_serial for any
// thread count.  Per-point numerical failures are rethrown with the grid
// coordinates attached.
ScanResult scan_detunings(const ScanGrid& grid);
// Plain-loop reference implementation kept for testing and benchmarking.
ScanResult scan_detunings_serial(const ScanGrid& grid);

// A peak in a delta1 cut of the map at fixed delta2.
struct ResonancePeak {
    double delta1 = 0.0;  // parabola-refined position
    double height = 0.0;  // refined peak value
    double width = 0.0;   // full width at half prominence
    int order_n = 0;      // photon order N of the nearest N-photon line
};

// One row of a scan: max occupation versus delta1 at fixed delta2, plus the
// context needed to classify peaks.
struct DetuningCut {
    std::vector<double> delta1;
    std::vector<double> values;
    double delta2 = 0.0;
    ModelParams params;
    BasisState initial;
};

DetuningCut extract_cut(const ScanResult& r, std::size_t i2);

// Local maxima rising at least `prominence` above both (a) a fitted
// single-mode Lorentzian background a*w/(w + delta1^2) (w seeded at
// 4 lambda1^2 n1) and (b) their own key saddles (topographic prominence),
// which merges sampling ripples riding on a broad resonance into it.
// Positions/heights are refined through the local parabola; order_n labels
// each peak with the photon number of the closest N-photon resonance line
// delta1 = delta2 (N-1)/N, assigned jointly so orders increase with delta1.
// The labelling is a heuristic: it follows the leading-order resonance
// geometry, not the exact level structure.
std::vector<ResonancePeak> find_peaks(const DetuningCut& cut, double prominence = 0.1);

// ---- adiabatic elimination of a two-photon resonance ---------------------

// Kets spanning the reduced space around the two-photon line of
// |g,n1,n2>: the directly coupled chain through one- and two-photon
// exchange.  Requires n1 >= 2; the first ket is dropped when n2 = 0.
std::vector<BasisState> reduced_states(int n1, int n2);

// Hamiltonian restricted to reduced_states (6x6, or 5x5 when n2 = 0),
// written in the detuning convention of the reduced model: diagonal entries
// are the initial ket's energy minus the ket's energy (so the initial ket
// sits at 0 and red-detuned kets are positive); couplings stay positive.
// Conjugating by the excited-state parity and negating recovers the plain
// restriction of build_hamiltonian, shifted to the initial ket.
SymMatrix reduced_hamiltonian6(int n1, int n2, const ModelParams& p);

struct EffectiveTwoLevel {
    double e1 = 0.0;         // dressed energy of |g,n1,n2>
    double e2 = 0.0;         // dressed energy of |x,n1-2,n2+1>
    double omega_eff = 0.0;  // effective two-photon Rabi coupling
    double predicted_delta2 = 0.0;  // delta2 solving e1 = e2 to leading order
    double validity_ratio = 0.0;    // max(lambda_i sqrt(n_i)) / |delta1-delta2|
    bool beyond_validity = false;   // ratio > 0.3: perturbation theory suspect
};

// Second-order elimination of the intermediate kets.  Throws
// std::invalid_argument for n1 < 2 and std::domain_error when a
// perturbation denominator vanishes (delta1 = 0, delta2 = 0, delta1 =
// delta2).
EffectiveTwoLevel adiabatic_elimination(int n1, int n2, const ModelParams& p);

// Stark-shift-corrected two-photon resonance condition:
// delta2 = 2 delta1 + [lambda1^2 (2 n1 - 1) + lambda2^2 (n2 + 1)] / delta1.
double resonance_predict(int n1, int n2, double lambda1, double lambda2,
                         double delta1);

// Final ket of an N-photon resonance from |g,n1,n2>: N photons leave mode 1,
// N-1 enter mode 2, emitter excited.  Throws if fewer than N photons are
// available or the initial ket is not ground-level.
BasisState n_photon_final_state(const BasisState& initial, int order_n);

// Semiclassical dichromatic resonance estimate for the second colour:
// delta2 = |delta1| - Omega_Rabi.
double dichromatic_predict(double delta1, double omega_rabi);

} // namespace tmjc

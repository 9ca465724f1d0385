#pragma once
// Closed-form beat expansion of the excited-state occupation.  For an
// initial basis ket |j0> with coefficients c_k = V[j0,k] in the eigenbasis,
//   P_x(t) = sum_kl c_k c_l B_kl cos((E_k - E_l) t),  B = V^T P_x V,
// i.e. a constant plus a finite sum of cosines at the eigenvalue gaps.
// Scanning this expansion is far cheaper than repeated state evolution and
// is the workhorse behind resonance maps.

#include <cstddef>
#include <vector>

#include "manifold.hpp"
#include "propagator.hpp"

namespace tmjc {

class OccupationKernel {
  public:
    // Terms whose combined |amplitude| is below amp_cut are dropped; the
    // discarded weight bounds the evaluation error.
    OccupationKernel(const EigenDecomposition& d, const Manifold& m,
                     std::size_t initial_index, double amp_cut = 1e-12);

    double constant() const { return constant_; }
    std::size_t term_count() const { return freq_.size(); }

    // Beat frequency carrying the largest |amplitude|; the slow envelope of
    // a near-two-level resonance shows up here.
    double dominant_beat_frequency() const;

    // Direct evaluation (used for refinement and spot checks).
    double value(double t) const;

    struct Max {
        double value = 0.0;
        double t = 0.0;
    };

    // Dense scan over [0, horizon] with step dt.  Cosines advance through
    // the two-term recurrence c_{n+1} = 2 cos(w dt) c_n - c_{n-1}, refreshed
    // from std::cos at fixed block boundaries so rounding error cannot
    // accumulate.  Block layout is independent of thread count, which keeps
    // the result bitwise deterministic under OpenMP.
    Max sample_max(double horizon, double dt) const;

    // sample_max followed by golden-section refinement of the peak position
    // to an absolute tolerance of 1e-6 in t.
    Max max_over(double horizon, double dt) const;

  private:
    double constant_ = 0.0;
    std::vector<double> freq_;  // positive eigenvalue gaps
    std::vector<double> amp_;   // 2 * M_kl for k < l
};

// One resonance-map sample: build the manifold of the initial ket, exact
// eigendecomposition, then the maximum of P_x over [0, horizon] at the
// Nyquist-safe step.  The initial ket must be a ground-level state.
OccupationKernel::Max max_occupation(const ModelParams& p, const BasisState& initial,
                                     double horizon);

// Scan window long enough to catch the slow beat of every few-photon
// resonance at that excitation number: 5000 for N <= 2, 50000 above.
double default_horizon(int n_total);

} // namespace tmjc

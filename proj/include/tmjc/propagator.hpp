#pragma once
// Exact propagation by spectral decomposition, plus an independent RK4
// integrator used as a cross-check.  The eigensolver is a cyclic Jacobi
// sweep: for the small dense symmetric matrices produced by excitation
// manifolds (dim <= a few dozen) it is simple, accurate to machine
// precision, and fully deterministic.

#include <span>
#include <stdexcept>

#include "hamiltonian.hpp"
#include "manifold.hpp"
#include "sym_matrix.hpp"

namespace tmjc {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
    std::size_t dim = 0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // row-major; column k = k-th eigenvector

    double vec(std::size_t i, std::size_t k) const { return eigenvectors[i * dim + k]; }
};

// Cyclic Jacobi diagonalisation.  Converges when the off-diagonal Frobenius
// norm drops below 1e-12 * ||H||_F; throws ConvergenceError after 100 sweeps.
EigenDecomposition eigendecompose(const SymMatrix& h);

// psi(t) = V exp(-i E t) V^T psi0.  Unitary to machine precision.
StateVector evolve(const EigenDecomposition& d, const StateVector& psi0, double t);

// Largest safe sampling step for occupation traces: pi / (2 * spectral
// spread), with the spread taken from Gershgorin bounds so the step is
// bitwise reproducible across equivalent parameter transformations.
double nyquist_dt(const SymMatrix& h);

// Fixed-step RK4 on i d(psi)/dt = H psi.  Deliberately shares no code with
// evolve(); no renormalisation is applied, so norm drift measures accuracy.
StateVector rk4_evolve(const SymMatrix& h, const StateVector& psi0, double t_end,
                       double dt);

// Occupation time series P_x(t), <n1>(t), <n2>(t) and optional per-ket
// populations, sampled at the given times.
struct OccupationTrace {
    std::vector<double> times;
    std::vector<double> p_excited;
    std::vector<double> n_mode1;
    std::vector<double> n_mode2;
    std::vector<BasisState> tracked_states;
    std::vector<std::vector<double>> tracked;  // tracked[k][sample]
};

OccupationTrace occupation_trace(const EigenDecomposition& d, const Manifold& m,
                                 const StateVector& psi0, std::span<const double> times,
                                 std::span<const BasisState> track = {});

} // namespace tmjc

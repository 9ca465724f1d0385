#pragma once
// Two-mode Jaynes-Cummings Hamiltonian in the frame rotating at the emitter
// frequency.  Within one excitation manifold the matrix is real symmetric:
//   diagonal   <v,n1,n2| H |v,n1,n2> = n1*delta1 + n2*delta2
//   couplings  |g,n1,n2> <-> |x,n1-1,n2>  with  lambda1*sqrt(n1)
//              |g,n1,n2> <-> |x,n1,n2-1>  with  lambda2*sqrt(n2)
// delta_i are mode detunings from the emitter, lambda_i the vacuum coupling
// rates.  lambda2 = 1 sets the unit system used throughout.

#include <complex>
#include <vector>

#include "manifold.hpp"
#include "sym_matrix.hpp"

namespace tmjc {

struct ModelParams {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    // Rejects non-finite entries and negative couplings.  A zero coupling is
    // allowed (single-mode limit); the CLI additionally insists on > 0.
    void validate() const;
};

SymMatrix build_hamiltonian(const Manifold& m, const ModelParams& p);

using StateVector = std::vector<std::complex<double>>;

StateVector basis_vector(std::size_t dim, std::size_t index);
double norm(const StateVector& psi);

// <psi| a1^d a1 + a2^d a2 + |x><x| |psi>; equals n_total for any state in the
// manifold.  Throws std::invalid_argument if psi is unnormalised, unless
// renormalize is set.
double expectation_excitation(const Manifold& m, const StateVector& psi,
                              bool renormalize = false);

} // namespace tmjc

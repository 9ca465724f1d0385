#include "tmjc/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace tmjc {

void ModelParams::validate() const {
    if (!std::isfinite(delta1) || !std::isfinite(delta2) || !std::isfinite(lambda1) ||
        !std::isfinite(lambda2))
        throw std::invalid_argument("model parameters must be finite");
    if (lambda1 < 0.0 || lambda2 < 0.0)
        throw std::invalid_argument("couplings lambda1, lambda2 must be >= 0");
}

SymMatrix build_hamiltonian(const Manifold& m, const ModelParams& p) {
    p.validate();
    SymMatrix h(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const BasisState& s = m.state(i);
        h.set(i, i, s.n1 * p.delta1 + s.n2 * p.delta2);
        if (s.level != Level::G)
            continue;
        // Photon absorption out of |g,n1,n2>; emission is the transpose.
        if (s.n1 > 0) {
            std::size_t j = m.index_of({Level::X, s.n1 - 1, s.n2});
            h.set(i, j, p.lambda1 * std::sqrt(static_cast<double>(s.n1)));
        }
        if (s.n2 > 0) {
            std::size_t j = m.index_of({Level::X, s.n1, s.n2 - 1});
            h.set(i, j, p.lambda2 * std::sqrt(static_cast<double>(s.n2)));
        }
    }
    return h;
}

StateVector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim)
        throw std::out_of_range("basis index out of range");
    StateVector psi(dim, {0.0, 0.0});
    psi[index] = {1.0, 0.0};
    return psi;
}

double norm(const StateVector& psi) {
    double s = 0.0;
    for (const auto& a : psi)
        s += std::norm(a);
    return std::sqrt(s);
}

double expectation_excitation(const Manifold& m, const StateVector& psi,
                              bool renormalize) {
    if (psi.size() != m.size())
        throw std::invalid_argument("state vector dimension does not match manifold");
    double nrm2 = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        double w = std::norm(psi[i]);
        nrm2 += w;
        acc += w * m.state(i).excitation();
    }
    if (std::abs(nrm2 - 1.0) > 1e-9) {
        if (!renormalize)
            throw std::invalid_argument("state vector is not normalised");
        if (nrm2 == 0.0)
            throw std::invalid_argument("cannot renormalise the zero vector");
        acc /= nrm2;
    }
    return acc;
}

} // namespace tmjc

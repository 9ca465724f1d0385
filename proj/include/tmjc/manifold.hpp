#pragma once
// Excitation-number manifolds of a two-level emitter coupled to two photon
// modes.  The operator N = a1^d a1 + a2^d a2 + |x><x| commutes with the
// Hamiltonian, so the dynamics block-diagonalises over subspaces of fixed
// total excitation number.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tmjc {

enum class Level : std::uint8_t { G, X };

// One basis ket |level, n1, n2>.
struct BasisState {
    Level level = Level::G;
    int n1 = 0;
    int n2 = 0;

    int excitation() const { return n1 + n2 + (level == Level::X ? 1 : 0); }
    friend bool operator==(const BasisState&, const BasisState&) = default;
};

// Render as "g,2,0" / "x,0,1" (also the CLI input syntax).
std::string to_string(const BasisState& s);
BasisState parse_basis_state(const std::string& text);

// All kets with a given total excitation number N, in canonical order:
// ground states by descending n1, then excited states by descending n1.
// For N >= 1 the manifold holds 2N+1 states; N = 0 holds only |g,0,0>.
class Manifold {
  public:
    static Manifold enumerate(int n_total);

    int n_total() const { return n_total_; }
    std::size_t size() const { return states_.size(); }
    const std::vector<BasisState>& states() const { return states_; }
    const BasisState& state(std::size_t i) const { return states_[i]; }

    // Position of a ket in canonical order; throws std::out_of_range for
    // kets outside this manifold (wrong excitation number or negative n).
    std::size_t index_of(const BasisState& s) const;

    // Indices of all excited-emitter kets (used for P_x projections).
    std::vector<std::size_t> excited_indices() const;

  private:
    explicit Manifold(int n_total);
    int n_total_;
    std::vector<BasisState> states_;
};

} // namespace tmjc

#pragma once
// Dense real symmetric matrix with exact (bitwise) symmetry enforced at
// write time.  All model Hamiltonians in the rotating frame are real
// symmetric, so this is the only matrix type the library needs.

#include <cstddef>
#include <span>
#include <vector>

namespace tmjc {

class SymMatrix {
  public:
    explicit SymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}

    std::size_t dim() const { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    // Writes both (i,j) and (j,i) so symmetry can never drift.
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * dim_ + j] = v;
        a_[j * dim_ + i] = v;
    }

    std::span<const double> data() const { return a_; }

    double frobenius_norm() const;
    double inf_norm() const;

    // Gershgorin enclosure of the spectrum: every eigenvalue lies in
    // [lo, hi].  Cheap, exact under row permutations and global sign flips,
    // which makes it the right basis for deterministic sampling steps.
    struct Bounds {
        double lo;
        double hi;
    };
    Bounds gershgorin_bounds() const;

  private:
    std::size_t dim_;
    std::vector<double> a_;
};

} // namespace tmjc

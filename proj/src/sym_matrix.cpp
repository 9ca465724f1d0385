#include "tmjc/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace tmjc {

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_)
        s += v * v;
    return std::sqrt(s);
}

double SymMatrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            row += std::abs(a_[i * dim_ + j]);
        best = std::max(best, row);
    }
    return best;
}

SymMatrix::Bounds SymMatrix::gershgorin_bounds() const {
    if (dim_ == 0)
        return {0.0, 0.0};
    Bounds b{0.0, 0.0};
    bool first = true;
    for (std::size_t i = 0; i < dim_; ++i) {
        double radius = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            if (j != i)
                radius += std::abs(a_[i * dim_ + j]);
        double d = a_[i * dim_ + i];
        if (first) {
            b = {d - radius, d + radius};
            first = false;
        } else {
            b.lo = std::min(b.lo, d - radius);
            b.hi = std::max(b.hi, d + radius);
        }
    }
    return b;
}

} // namespace tmjc

#include "tmjc/manifold.hpp"

#include <sstream>
#include <stdexcept>

namespace tmjc {

std::string to_string(const BasisState& s) {
    std::ostringstream out;
    out << (s.level == Level::G ? 'g' : 'x') << ',' << s.n1 << ',' << s.n2;
    return out.str();
}

BasisState parse_basis_state(const std::string& text) {
    std::istringstream in(text);
    std::string level;
    char c1 = 0, c2 = 0;
    BasisState s;
    if (!std::getline(in, level, ',') || !(in >> s.n1 >> c1 >> s.n2) || c1 != ',' ||
        (in >> c2)) {
        throw std::invalid_argument("basis state must look like 'g,2,0': got '" + text +
                                    "'");
    }
    if (level == "g") {
        s.level = Level::G;
    } else if (level == "x") {
        s.level = Level::X;
    } else {
        throw std::invalid_argument("basis state level must be 'g' or 'x': got '" +
                                    text + "'");
    }
    if (s.n1 < 0 || s.n2 < 0)
        throw std::invalid_argument("photon numbers must be >= 0: got '" + text + "'");
    return s;
}

Manifold::Manifold(int n_total) : n_total_(n_total) {
    if (n_total < 0)
        throw std::invalid_argument("total excitation number must be >= 0");
    states_.reserve(n_total == 0 ? 1 : 2 * static_cast<std::size_t>(n_total) + 1);
    for (int n1 = n_total; n1 >= 0; --n1)
        states_.push_back({Level::G, n1, n_total - n1});
    for (int n1 = n_total - 1; n1 >= 0; --n1)
        states_.push_back({Level::X, n1, n_total - 1 - n1});
}

Manifold Manifold::enumerate(int n_total) { return Manifold(n_total); }

std::size_t Manifold::index_of(const BasisState& s) const {
    // The canonical order makes the position arithmetic; validate first.
    if (s.n1 < 0 || s.n2 < 0 || s.excitation() != n_total_)
        throw std::out_of_range("state " + to_string(s) + " is not in the N=" +
                                std::to_string(n_total_) + " manifold");
    if (s.level == Level::G)
        return static_cast<std::size_t>(n_total_ - s.n1);
    return static_cast<std::size_t>(n_total_ + 1) +
           static_cast<std::size_t>(n_total_ - 1 - s.n1);
}

std::vector<std::size_t> Manifold::excited_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i].level == Level::X)
            idx.push_back(i);
    return idx;
}

} // namespace tmjc

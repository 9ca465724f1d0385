#include <doctest.h>

#include <cmath>
#include <vector>

#include "tmjc/analysis.hpp"
#include "tmjc/propagator.hpp"

using namespace tmjc;

namespace {

DetuningCut synthetic_cut(std::vector<double> x, std::vector<double> v,
                          double delta2, BasisState initial) {
    DetuningCut cut;
    cut.delta1 = std::move(x);
    cut.values = std::move(v);
    cut.delta2 = delta2;
    cut.params = {0.0, delta2, 1.0, 1.0};
    cut.initial = initial;
    return cut;
}

double gauss_bump(double x, double c, double h, double s) {
    const double u = (x - c) / s;
    return h * std::exp(-0.5 * u * u);
}

} // namespace

TEST_CASE("a 1x1 scan equals the direct maximum-occupation query") {
    ScanGrid grid;
    grid.delta1_values = {4.62};
    grid.delta2_values = {10.0};
    grid.params = {0.0, 0.0, 1.0, 1.0};
    grid.initial = {Level::G, 2, 0};
    grid.horizon = 2000.0;
    const ScanResult r = scan_detunings(grid);

    const auto direct = max_occupation({4.62, 10.0, 1.0, 1.0}, {Level::G, 2, 0}, 2000.0);
    CHECK(r.max_at(0, 0) == direct.value);
    CHECK(r.time_at(0, 0) == direct.t);
    CHECK(r.degenerate_vicinity[0] == 0);
}

TEST_CASE("parallel scan is bitwise identical to the serial reference") {
    ScanGrid grid;
    grid.delta1_values = {2.0, 3.5, 4.62, 6.0};
    grid.delta2_values = {8.0, 10.0, 12.0};
    grid.params = {0.0, 0.0, 1.0, 1.0};
    grid.initial = {Level::G, 2, 0};
    grid.horizon = 500.0;

    const ScanResult par = scan_detunings(grid);
    const ScanResult ser = scan_detunings_serial(grid);
    REQUIRE(par.max_occupation.size() == ser.max_occupation.size());
    for (std::size_t i = 0; i < par.max_occupation.size(); ++i) {
        CHECK(par.max_occupation[i] == ser.max_occupation[i]);
        CHECK(par.argmax_time[i] == ser.argmax_time[i]);
    }
}

TEST_CASE("scan validates grid and flags the mode-degenerate strip") {
    ScanGrid grid;
    grid.delta1_values = {1.0};
    grid.delta2_values = {1.2, 5.0};
    grid.params = {0.0, 0.0, 1.0, 0.5};
    grid.initial = {Level::G, 1, 0};
    grid.horizon = 50.0;
    const ScanResult r = scan_detunings(grid);
    CHECK(r.degenerate_vicinity[0] == 1);  // |1.0 - 1.2| < max(lambda)/2
    CHECK(r.degenerate_vicinity[1] == 0);

    ScanGrid bad = grid;
    bad.delta1_values.clear();
    CHECK_THROWS_AS((void)scan_detunings(bad), std::invalid_argument);
    bad = grid;
    bad.initial = {Level::X, 0, 0};
    CHECK_THROWS_AS((void)scan_detunings(bad), std::invalid_argument);
    bad = grid;
    bad.horizon = -1.0;
    CHECK_THROWS_AS((void)scan_detunings(bad), std::invalid_argument);
}

TEST_CASE("extract_cut slices one column of the map") {
    ScanGrid grid;
    grid.delta1_values = {1.0, 2.0, 3.0};
    grid.delta2_values = {7.0, 9.0};
    grid.params = {0.0, 0.0, 1.0, 1.0};
    grid.initial = {Level::G, 1, 0};
    grid.horizon = 20.0;
    const ScanResult r = scan_detunings(grid);

    const DetuningCut cut = extract_cut(r, 1);
    CHECK(cut.delta2 == 9.0);
    REQUIRE(cut.values.size() == 3);
    for (std::size_t i1 = 0; i1 < 3; ++i1)
        CHECK(cut.values[i1] == r.max_at(i1, 1));
    CHECK_THROWS_AS((void)extract_cut(r, 2), std::out_of_range);
}

TEST_CASE("find_peaks locates towers over a Lorentzian tail") {
    std::vector<double> x, v;
    const double w = 4.0;
    for (int i = 0; i < 400; ++i) {
        const double xi = 1.0 + 5.0 * i / 399.0;
        x.push_back(xi);
        v.push_back(0.8 * w / (w + xi * xi) + gauss_bump(xi, 2.5, 0.5, 0.15) +
                    gauss_bump(xi, 4.0, 0.3, 0.05));
    }
    const DetuningCut cut = synthetic_cut(x, v, 10.0, {Level::G, 2, 0});
    const auto peaks = find_peaks(cut, 0.1);

    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].delta1 == doctest::Approx(2.5).epsilon(0.01));
    CHECK(peaks[1].delta1 == doctest::Approx(4.0).epsilon(0.01));
    CHECK(peaks[0].height ==
          doctest::Approx(0.8 * w / (w + 2.5 * 2.5) + 0.5).epsilon(0.03));
    // full width at half prominence tracks the Gaussian FWHM 2.355 sigma
    CHECK(peaks[0].width == doctest::Approx(2.355 * 0.15).epsilon(0.3));
    CHECK(peaks[1].width == doctest::Approx(2.355 * 0.05).epsilon(0.3));
    CHECK(peaks[0].width > peaks[1].width);
}

TEST_CASE("find_peaks returns nothing on monotone data") {
    std::vector<double> x, v;
    for (int i = 0; i < 100; ++i) {
        x.push_back(1.0 + 0.05 * i);
        v.push_back(std::exp(-0.5 * i / 99.0));
    }
    CHECK(find_peaks(synthetic_cut(x, v, 5.0, {Level::G, 2, 0}), 0.05).empty());
}

TEST_CASE("sampling ripples on a broad resonance merge into one peak") {
    std::vector<double> x, v;
    for (int i = 0; i < 400; ++i) {
        const double xi = 1.0 + 5.0 * i / 399.0;
        x.push_back(xi);
        v.push_back(gauss_bump(xi, 3.0, 0.9, 0.3));
    }
    // notch one sample on the rising flank: two crests, one key saddle
    std::size_t k = 0;
    while (x[k] < 2.8)
        ++k;
    v[k] -= 0.02;
    const DetuningCut cut = synthetic_cut(x, v, 10.0, {Level::G, 2, 0});
    const auto peaks = find_peaks(cut, 0.1);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].delta1 == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("photon-order labels follow the N-photon resonance lines") {
    // towers near the N = 2 and N = 4 lines of delta2 = 10: 5.0 and 7.5
    std::vector<double> x, v;
    for (int i = 0; i < 500; ++i) {
        const double xi = 4.0 + 4.5 * i / 499.0;
        x.push_back(xi);
        v.push_back(gauss_bump(xi, 4.9, 0.6, 0.1) + gauss_bump(xi, 7.4, 0.4, 0.08));
    }
    const auto peaks = find_peaks(synthetic_cut(x, v, 10.0, {Level::G, 5, 0}), 0.1);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].order_n == 2);
    CHECK(peaks[1].order_n == 4);

    // with only the N = 2 line available every peak maps to it
    const auto two = find_peaks(synthetic_cut(x, v, 10.0, {Level::G, 2, 0}), 0.1);
    REQUIRE(two.size() == 2);
    CHECK(two[0].order_n == 2);
    CHECK(two[1].order_n == 2);

    CHECK_THROWS_AS((void)find_peaks(synthetic_cut({1.0}, {1.0, 2.0}, 5.0,
                                                   (BasisState{Level::G, 2, 0})),
                                     0.1),
                    std::invalid_argument);
}

TEST_CASE("reduced model spans the two-photon exchange chain") {
    const auto kets20 = reduced_states(2, 0);
    REQUIRE(kets20.size() == 5);
    CHECK(kets20[0] == BasisState{Level::X, 1, 0});
    CHECK(kets20[1] == BasisState{Level::G, 2, 0});
    CHECK(kets20[2] == BasisState{Level::X, 0, 1});
    CHECK(kets20[3] == BasisState{Level::G, 1, 1});
    CHECK(kets20[4] == BasisState{Level::G, 0, 2});

    const auto kets21 = reduced_states(2, 1);
    REQUIRE(kets21.size() == 6);
    CHECK(kets21[0] == BasisState{Level::X, 2, 0});

    CHECK_THROWS_AS((void)reduced_states(1, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)reduced_states(2, -1), std::invalid_argument);
}

TEST_CASE("reduced hamiltonian carries detunings on the diagonal") {
    const double d1 = 4.62, d2 = 10.0, l1 = 1.3, l2 = 0.7;
    const SymMatrix h = reduced_hamiltonian6(2, 0, {d1, d2, l1, l2});
    REQUIRE(h.dim() == 5);
    // kets: x10, g20, x01, g11, g02
    CHECK(h(0, 0) == doctest::Approx(d1).epsilon(1e-14));
    CHECK(h(1, 1) == 0.0);
    CHECK(h(2, 2) == doctest::Approx(2.0 * d1 - d2).epsilon(1e-14));
    CHECK(h(3, 3) == doctest::Approx(d1 - d2).epsilon(1e-14));
    CHECK(h(4, 4) == doctest::Approx(2.0 * (d1 - d2)).epsilon(1e-14));

    CHECK(h(0, 1) == doctest::Approx(l1 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h(0, 3) == doctest::Approx(l2).epsilon(1e-14));
    CHECK(h(2, 3) == doctest::Approx(l1).epsilon(1e-14));
    CHECK(h(2, 4) == doctest::Approx(l2 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(h(0, 2) == 0.0);
    CHECK(h(1, 4) == 0.0);
}

TEST_CASE("reduced hamiltonian is the parity-flipped restriction of the full one") {
    const ModelParams p{3.1, 7.7, 1.1, 0.9};
    const int n1 = 2, n2 = 1;
    const auto kets = reduced_states(n1, n2);
    const SymMatrix red = reduced_hamiltonian6(n1, n2, p);

    const Manifold m = Manifold::enumerate(n1 + n2);
    const SymMatrix full = build_hamiltonian(m, p);
    const double e0 = n1 * p.delta1 + n2 * p.delta2;
    for (std::size_t a = 0; a < kets.size(); ++a) {
        for (std::size_t b = 0; b < kets.size(); ++b) {
            const double sa = kets[a].level == Level::X ? -1.0 : 1.0;
            const double sb = kets[b].level == Level::X ? -1.0 : 1.0;
            const double restricted =
                full(m.index_of(kets[a]), m.index_of(kets[b])) - (a == b ? e0 : 0.0);
            CHECK(std::abs(red(a, b) - (-sa * sb * restricted)) < 1e-12);
        }
    }
}

TEST_CASE("adiabatic elimination reproduces the frozen reference reduction") {
    const EffectiveTwoLevel eff = adiabatic_elimination(2, 0, {4.62, 10.0, 1.0, 1.0});
    CHECK(eff.e1 == doctest::Approx(-0.4329004329).epsilon(1e-9));
    CHECK(eff.e2 == doctest::Approx(-0.3882527881).epsilon(1e-9));
    CHECK(eff.omega_eff == doctest::Approx(-0.1137943612).epsilon(1e-9));
    CHECK(eff.predicted_delta2 == doctest::Approx(10.1058008658).epsilon(1e-9));
    CHECK(eff.validity_ratio == doctest::Approx(std::sqrt(2.0) / 5.38).epsilon(1e-12));
    CHECK(!eff.beyond_validity);

    // close to mode degeneracy the ratio blows past the trust threshold
    CHECK(adiabatic_elimination(2, 0, {4.0, 5.0, 1.0, 1.0}).beyond_validity);

    CHECK_THROWS_AS((void)adiabatic_elimination(1, 0, (ModelParams{1.0, 2.0, 1.0, 1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)adiabatic_elimination(2, 0, (ModelParams{0.0, 2.0, 1.0, 1.0})),
                    std::domain_error);
    CHECK_THROWS_AS((void)adiabatic_elimination(2, 0, (ModelParams{1.0, 0.0, 1.0, 1.0})),
                    std::domain_error);
    CHECK_THROWS_AS((void)adiabatic_elimination(2, 0, (ModelParams{2.0, 2.0, 1.0, 1.0})),
                    std::domain_error);
}

TEST_CASE("stark-corrected resonance condition and its classification") {
    CHECK(resonance_predict(2, 0, 1.0, 1.0, 4.62) ==
          doctest::Approx(10.1058008658).epsilon(1e-10));
    CHECK(resonance_predict(2, 0, 1.0, 1.0, 8.0) == doctest::Approx(16.5).epsilon(1e-14));
    CHECK(resonance_predict(2, 0, 1.0, 1.0, 10.0) == doctest::Approx(20.4).epsilon(1e-14));
    CHECK_THROWS_AS((void)resonance_predict(2, 0, 1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)resonance_predict(1, 0, 1.0, 1.0, 1.0), std::invalid_argument);

    CHECK(n_photon_final_state({Level::G, 5, 0}, 2) == BasisState{Level::X, 3, 1});
    CHECK(n_photon_final_state({Level::G, 2, 1}, 2) == BasisState{Level::X, 0, 2});
    CHECK(n_photon_final_state({Level::G, 3, 0}, 1) == BasisState{Level::X, 2, 0});
    CHECK_THROWS_AS((void)n_photon_final_state((BasisState{Level::X, 2, 0}), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)n_photon_final_state((BasisState{Level::G, 1, 0}), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)n_photon_final_state((BasisState{Level::G, 2, 0}), 0),
                    std::invalid_argument);

    CHECK(dichromatic_predict(-2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)dichromatic_predict(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("reduction frequency approaches the exact beat as detuning grows") {
    // At the reduction's own resonance point the generalised coupling
    // sqrt(omega_eff^2 + (e1-e2)^2) should match the dominant beat of the
    // exact kernel, better and better as delta1 moves off the one-photon line.
    const double frozen[4][2] = {{4.62, 0.933529}, {8.0, 0.970745},
                                 {10.0, 0.980085}, {12.0, 0.985670}};
    double prev = 0.0;
    for (const auto& [d1, expected] : frozen) {
        ModelParams p{d1, resonance_predict(2, 0, 1.0, 1.0, d1), 1.0, 1.0};
        const EffectiveTwoLevel eff = adiabatic_elimination(2, 0, p);
        const double gen = std::hypot(eff.omega_eff, eff.e1 - eff.e2);

        const Manifold m = Manifold::enumerate(2);
        const EigenDecomposition d = eigendecompose(build_hamiltonian(m, p));
        const OccupationKernel k(d, m, m.index_of({Level::G, 2, 0}));
        const double ratio = gen / k.dominant_beat_frequency();

        CHECK(ratio == doctest::Approx(expected).epsilon(1e-4));
        CHECK(ratio > prev);
        CHECK(ratio < 1.0);
        prev = ratio;
    }
}

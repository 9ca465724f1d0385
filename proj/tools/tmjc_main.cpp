// Command-line front end: dynamics traces, resonance-map scans, detuning
// cuts, semiclassical drives, and the closed-form resonance predictors.
// All quantities are in units of the coupling Lambda (Omega0 for the
// semiclassical commands).  Output is deterministic byte-for-byte.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmjc/analysis.hpp"
#include "tmjc/io.hpp"
#include "tmjc/occupation_kernel.hpp"
#include "tmjc/propagator.hpp"
#include "tmjc/semiclassical.hpp"
#include "tmjc/svg_plot.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

// "start:stop:count" (inclusive, linear) or a bare scalar.
std::vector<double> parse_range(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw CLI::ValidationError("range", "not a number: '" + text + "'");
        return {v};
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw CLI::ValidationError("range", "expected start:stop:count: '" + text + "'");
    try {
        const double start = std::stod(text.substr(0, c1));
        const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const long count = std::stol(text.substr(c2 + 1));
        if (count < 1)
            throw CLI::ValidationError("range", "count must be >= 1: '" + text + "'");
        if (count > 2000000)
            throw CLI::ValidationError("range", "count too large: '" + text + "'");
        std::vector<double> v(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i)
            v[static_cast<std::size_t>(i)] =
                count == 1 ? start : start + (stop - start) * i / double(count - 1);
        return v;
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("range", "not numeric: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw CLI::ValidationError("range", "out of range: '" + text + "'");
    }
}

std::pair<double, double> parse_lambda(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            const double v = std::stod(text);
            return {v, v};
        }
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("lambda", "expected L or L1,L2: '" + text + "'");
    }
}

void apply_thread_override() {
#ifdef _OPENMP
    if (const char* env = std::getenv("TMJC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            omp_set_num_threads(n);
    }
#endif
}

// Output path defaults to "<command>.<format>" next to the caller.
std::string resolve_out(const std::string& out, const std::string& command,
                        const std::string& format) {
    return out.empty() ? command + "." + format : out;
}

void emit(const std::string& path, const std::string& format, const std::string& csv,
          const tmjc::Json& json) {
    if (format == "json")
        tmjc::write_file(path, json.dump(2) + "\n");
    else
        tmjc::write_file(path, csv);
}

std::string peak_summary(const std::vector<tmjc::ResonancePeak>& peaks) {
    if (peaks.empty())
        return "no peaks above prominence";
    std::string line = "peaks:";
    char buf[160];
    for (const auto& p : peaks) {
        std::snprintf(buf, sizeof(buf), " delta1=%.4f (height=%.4f width=%.4f N=%d)",
                      p.delta1, p.height, p.width, p.order_n);
        line += buf;
    }
    line += " [order labels heuristic]";
    return line;
}

struct ScanArgs {
    std::string initial = "g,2,0";
    std::string d1, d2;
    std::string lambda = "1";
    double horizon = 0.0;  // 0 = auto by excitation number
    double prominence = 0.1;
    std::string out, format = "csv", plot;
};

int run_scan(const ScanArgs& args, bool cut_mode) {
    using namespace tmjc;
    ScanGrid grid;
    grid.initial = parse_basis_state(args.initial);
    grid.delta1_values = parse_range(args.d1);
    grid.delta2_values = parse_range(args.d2);
    auto [l1, l2] = parse_lambda(args.lambda);
    grid.params.lambda1 = l1;
    grid.params.lambda2 = l2;
    if (!(l1 > 0.0) || !(l2 > 0.0))
        throw CLI::ValidationError("lambda", "couplings must be > 0");
    grid.horizon =
        args.horizon > 0.0 ? args.horizon : default_horizon(grid.initial.excitation());
    if (cut_mode && grid.delta2_values.size() != 1)
        throw CLI::ValidationError("d2", "cut takes a single delta2 value");

    Json config;
    config["command"] = cut_mode ? "cut" : "scan";
    config["units"] = "Lambda";
    config["initial"] = args.initial;
    config["delta1"] = args.d1;
    config["delta2"] = args.d2;
    config["lambda1"] = l1;
    config["lambda2"] = l2;
    config["horizon"] = grid.horizon;
    config["sampling"] = "nyquist-auto";
    config["prominence"] = args.prominence;
    config["format"] = args.format;

    const ScanResult r = scan_detunings(grid);
    const std::string path =
        resolve_out(args.out, cut_mode ? "cut" : "scan", args.format);
    emit(path, args.format, scan_to_csv(r, config), scan_to_json(r, config));

    const bool is_cut = grid.delta2_values.size() == 1 && grid.delta1_values.size() > 1;
    if (!args.plot.empty()) {
        if (is_cut) {
            const DetuningCut cut = extract_cut(r, 0);
            write_file(args.plot, line_plot_svg({{cut.delta1, cut.values, "max P_x",
                                                  "#1f77b4"}},
                                                "delta1 [Lambda]", "max occupation",
                                                "detuning cut"));
        } else {
            write_file(args.plot, heatmap_svg(r, "max excited-state occupation"));
        }
    }

    if (is_cut) {
        const std::vector<ResonancePeak> peaks =
            find_peaks(extract_cut(r, 0), args.prominence);
        std::printf("%s\n", peak_summary(peaks).c_str());
    } else {
        std::size_t best = 0;
        for (std::size_t i = 1; i < r.max_occupation.size(); ++i)
            if (r.max_occupation[i] > r.max_occupation[best])
                best = i;
        const std::size_t n2 = r.cols();
        std::printf("grid max %.6f at delta1=%.6g delta2=%.6g (t=%.6g)\n",
                    r.max_occupation[best], r.grid.delta1_values[best / n2],
                    r.grid.delta2_values[best % n2], r.argmax_time[best]);
    }
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

struct DynamicsArgs {
    std::string initial = "g,2,0";
    double d1 = 0.0, d2 = 0.0;
    std::string lambda = "1";
    double t_end = 0.0;
    long samples = 0;  // 0 = nyquist-auto
    std::vector<std::string> track;
    std::string out, format = "csv", plot;
};

int run_dynamics(const DynamicsArgs& args) {
    using namespace tmjc;
    const BasisState initial = parse_basis_state(args.initial);
    auto [l1, l2] = parse_lambda(args.lambda);
    const ModelParams params{args.d1, args.d2, l1, l2};
    if (!(l1 > 0.0) || !(l2 > 0.0))
        throw CLI::ValidationError("lambda", "couplings must be > 0");
    if (!(args.t_end >= 0.0))
        throw CLI::ValidationError("t-end", "t_end must be >= 0");
    if (args.samples < 0 || args.samples > 2000000)
        throw CLI::ValidationError("samples", "sample count must be in [0, 2000000]");

    const Manifold m = Manifold::enumerate(initial.excitation());
    const SymMatrix h = build_hamiltonian(m, params);
    const EigenDecomposition dec = eigendecompose(h);

    long n = args.samples;
    if (n <= 0) {
        const double dt = nyquist_dt(h);
        n = std::isfinite(dt) ? static_cast<long>(std::floor(args.t_end / dt)) + 1 : 2;
        n = std::min(n, 200001L);
    }
    std::vector<double> times(static_cast<std::size_t>(std::max(n, 1L)));
    for (long i = 0; i < n; ++i)
        times[static_cast<std::size_t>(i)] =
            n == 1 ? 0.0 : args.t_end * i / double(n - 1);

    std::vector<BasisState> track;
    for (const std::string& s : args.track)
        track.push_back(parse_basis_state(s));

    const StateVector psi0 = basis_vector(m.size(), m.index_of(initial));
    const OccupationTrace tr = occupation_trace(dec, m, psi0, times, track);

    Json config;
    config["command"] = "dynamics";
    config["units"] = "Lambda";
    config["initial"] = args.initial;
    config["delta1"] = args.d1;
    config["delta2"] = args.d2;
    config["lambda1"] = l1;
    config["lambda2"] = l2;
    config["t_end"] = args.t_end;
    config["samples"] = n;
    config["format"] = args.format;

    const std::string path = resolve_out(args.out, "dynamics", args.format);
    emit(path, args.format, trace_to_csv(tr, config), trace_to_json(tr, config));
    if (!args.plot.empty())
        write_file(args.plot,
                   line_plot_svg({{tr.times, tr.p_excited, "P_x", "#1f77b4"}},
                                 "t [1/Lambda]", "occupation", "emitter dynamics"));

    std::size_t best = 0;
    for (std::size_t i = 1; i < tr.p_excited.size(); ++i)
        if (tr.p_excited[i] > tr.p_excited[best])
            best = i;
    std::printf("max P_x %.6f at t=%.6g (over %zu samples)\n", tr.p_excited[best],
                tr.times[best], tr.times.size());
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

struct RabiArgs {
    double omega = 0.0, delta = 0.0;
    double omega2 = 0.0, delta2 = 0.0;
    bool two_color = false;
    std::string shape = "cw";
    double t_center = 0.0, duration = 0.0;
    double t_end = 0.0, dt = 0.0;
    std::string out, format = "csv", plot;
};

int run_rabi(const RabiArgs& args) {
    using namespace tmjc;
    const DriveShape shape =
        args.shape == "gaussian" ? DriveShape::Gaussian : DriveShape::CwStep;
    std::vector<DriveField> drives;
    drives.push_back({shape, args.omega, args.delta, 0.0, args.t_center, args.duration});
    if (args.two_color)
        drives.push_back(
            {shape, args.omega2, args.delta2, 0.0, args.t_center, args.duration});

    const double dt = args.dt > 0.0 ? args.dt : default_step(drives);
    const TwoLevelTrace tr = simulate_two_level(drives, args.t_end, dt);

    Json config;
    config["command"] = "rabi";
    config["units"] = "Omega0";
    config["omega"] = args.omega;
    config["delta"] = args.delta;
    if (args.two_color) {
        config["omega2"] = args.omega2;
        config["delta2"] = args.delta2;
    }
    config["shape"] = args.shape;
    if (shape == DriveShape::Gaussian) {
        config["t_center"] = args.t_center;
        config["duration"] = args.duration;
    }
    config["t_end"] = args.t_end;
    config["dt"] = dt;
    config["format"] = args.format;

    const std::string path = resolve_out(args.out, "rabi", args.format);
    emit(path, args.format, trace_to_csv(tr, config), trace_to_json(tr, config));
    if (!args.plot.empty())
        write_file(args.plot,
                   line_plot_svg({{tr.times, tr.p_excited, "P_x", "#d62728"}},
                                 "t [1/Omega0]", "occupation", "two-level drive"));

    std::size_t best = 0;
    for (std::size_t i = 1; i < tr.p_excited.size(); ++i)
        if (tr.p_excited[i] > tr.p_excited[best])
            best = i;
    std::printf("max P_x %.6f at t=%.6g\n", tr.p_excited[best], tr.times[best]);
    if (!args.two_color && shape == DriveShape::CwStep && args.omega > 0.0) {
        double dev = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            dev = std::max(dev, std::abs(tr.p_excited[i] -
                                         rabi_analytic(args.omega, args.delta,
                                                       tr.times[i])));
        std::printf("analytic Rabi deviation %.3g\n", dev);
    }
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

struct ReduceArgs {
    int n1 = 2, n2 = 0;
    double d1 = 0.0, d2 = 0.0;
    std::string lambda = "1";
    bool matrix = false;
    std::string out;
};

int run_reduce(const ReduceArgs& args) {
    using namespace tmjc;
    auto [l1, l2] = parse_lambda(args.lambda);
    const ModelParams p{args.d1, args.d2, l1, l2};
    const EffectiveTwoLevel eff = adiabatic_elimination(args.n1, args.n2, p);
    std::printf("E1 = %.10g\n", eff.e1);
    std::printf("E2 = %.10g\n", eff.e2);
    std::printf("omega_eff = %.10g\n", eff.omega_eff);
    std::printf("predicted_delta2 = %.10g\n", eff.predicted_delta2);
    std::printf("validity_ratio = %.4f%s\n", eff.validity_ratio,
                eff.beyond_validity ? " (beyond perturbative validity)" : "");
    if (args.matrix) {
        const SymMatrix h = reduced_hamiltonian6(args.n1, args.n2, p);
        const std::vector<BasisState> kets = reduced_states(args.n1, args.n2);
        for (std::size_t i = 0; i < h.dim(); ++i) {
            std::printf("|%s|", to_string(kets[i]).c_str());
            for (std::size_t j = 0; j < h.dim(); ++j)
                std::printf(" %10.6g", h(i, j));
            std::printf("\n");
        }
    }
    if (!args.out.empty()) {
        Json j;
        j["command"] = "reduce";
        j["units"] = "Lambda";
        j["n1"] = args.n1;
        j["n2"] = args.n2;
        j["delta1"] = args.d1;
        j["delta2"] = args.d2;
        j["lambda1"] = l1;
        j["lambda2"] = l2;
        j["e1"] = eff.e1;
        j["e2"] = eff.e2;
        j["omega_eff"] = eff.omega_eff;
        j["predicted_delta2"] = eff.predicted_delta2;
        j["validity_ratio"] = eff.validity_ratio;
        j["beyond_validity"] = eff.beyond_validity;
        write_file(args.out, j.dump(2) + "\n");
        std::printf("wrote %s\n", args.out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_override();

    CLI::App app{"two-mode Jaynes-Cummings emitter: dynamics, resonance maps, "
                 "SUPER predictors (units of Lambda / Omega0)"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "max-occupation map over (delta1, delta2)");
    scan->add_option("--initial", scan_args.initial, "initial ket, e.g. g,2,0");
    scan->add_option("--d1", scan_args.d1, "delta1 range start:stop:count or scalar")
        ->required();
    scan->add_option("--d2", scan_args.d2, "delta2 range or scalar")->required();
    scan->add_option("--lambda", scan_args.lambda, "couplings L or L1,L2");
    scan->add_option("--horizon", scan_args.horizon, "scan window (0 = auto)");
    scan->add_option("--prominence", scan_args.prominence, "peak threshold for cut summaries");
    scan->add_option("--out", scan_args.out, "output path (default scan.<format>)");
    scan->add_option("--format", scan_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--plot", scan_args.plot, "write an SVG plot here");

    ScanArgs cut_args;
    CLI::App* cut = app.add_subcommand("cut", "delta1 cut at fixed delta2, with peak table");
    cut->add_option("--initial", cut_args.initial, "initial ket");
    cut->add_option("--d1", cut_args.d1, "delta1 range start:stop:count")->required();
    cut->add_option("--d2", cut_args.d2, "fixed delta2")->required();
    cut->add_option("--lambda", cut_args.lambda, "couplings L or L1,L2");
    cut->add_option("--horizon", cut_args.horizon, "scan window (0 = auto)");
    cut->add_option("--prominence", cut_args.prominence, "peak threshold (default 0.1)");
    cut->add_option("--out", cut_args.out, "output path (default cut.<format>)");
    cut->add_option("--format", cut_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cut->add_option("--plot", cut_args.plot, "write an SVG plot here");

    DynamicsArgs dyn_args;
    CLI::App* dyn = app.add_subcommand("dynamics", "occupation trace for one configuration");
    dyn->add_option("--initial", dyn_args.initial, "initial ket");
    dyn->add_option("--d1", dyn_args.d1, "delta1");
    dyn->add_option("--d2", dyn_args.d2, "delta2");
    dyn->add_option("--lambda", dyn_args.lambda, "couplings L or L1,L2");
    dyn->add_option("--t-end", dyn_args.t_end, "trace length")->required();
    dyn->add_option("--samples", dyn_args.samples, "sample count (0 = nyquist-auto)");
    dyn->add_option("--track", dyn_args.track, "extra kets to record (repeatable)");
    dyn->add_option("--out", dyn_args.out, "output path (default dynamics.<format>)");
    dyn->add_option("--format", dyn_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    dyn->add_option("--plot", dyn_args.plot, "write an SVG plot here");

    RabiArgs rabi_args;
    CLI::App* rabi = app.add_subcommand("rabi", "semiclassical two-level drive");
    rabi->add_option("--omega", rabi_args.omega, "drive Rabi amplitude")->required();
    rabi->add_option("--delta", rabi_args.delta, "drive detuning");
    CLI::Option* om2 = rabi->add_option("--omega2", rabi_args.omega2, "second drive amplitude");
    rabi->add_option("--delta2", rabi_args.delta2, "second drive detuning")->needs(om2);
    rabi->add_option("--shape", rabi_args.shape, "cw or gaussian")
        ->check(CLI::IsMember({"cw", "gaussian"}));
    rabi->add_option("--t-center", rabi_args.t_center, "gaussian pulse centre");
    rabi->add_option("--duration", rabi_args.duration, "gaussian width sigma");
    rabi->add_option("--t-end", rabi_args.t_end, "integration length")->required();
    rabi->add_option("--dt", rabi_args.dt, "step (0 = 0.01/max rate)");
    rabi->add_option("--out", rabi_args.out, "output path (default rabi.<format>)");
    rabi->add_option("--format", rabi_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    rabi->add_option("--plot", rabi_args.plot, "write an SVG plot here");

    double sc_omega0 = 0.0, sc_d1 = 0.0;
    CLI::App* scw = app.add_subcommand("super-cw", "cw two-color resonance condition");
    scw->add_option("--omega0", sc_omega0, "shared drive amplitude")->required();
    scw->add_option("--d1", sc_d1, "first detuning")->required();

    double sp_omega = 0.0, sp_d1 = 0.0;
    CLI::App* spl = app.add_subcommand("super-pulsed", "pulsed (swing-up) resonance condition");
    spl->add_option("--omega1-max", sp_omega, "peak Rabi amplitude of pulse 1")->required();
    spl->add_option("--d1", sp_d1, "first detuning")->required();

    int pr_n1 = 2, pr_n2 = 0;
    double pr_d1 = 0.0, pr_omega_rabi = 0.0;
    std::string pr_lambda = "1";
    CLI::App* pred = app.add_subcommand(
        "predict", "two-photon resonance delta2 from the reduced model");
    pred->add_option("--n1", pr_n1, "photons in mode 1")->required();
    pred->add_option("--n2", pr_n2, "photons in mode 2");
    pred->add_option("--d1", pr_d1, "delta1")->required();
    pred->add_option("--lambda", pr_lambda, "couplings L or L1,L2");
    pred->add_option("--omega-rabi", pr_omega_rabi,
                     "use the semiclassical dichromatic estimate |d1| - omega_rabi");

    ReduceArgs red_args;
    CLI::App* red = app.add_subcommand("reduce", "adiabatic-eliminated two-level model");
    red->add_option("--n1", red_args.n1, "photons in mode 1")->required();
    red->add_option("--n2", red_args.n2, "photons in mode 2");
    red->add_option("--d1", red_args.d1, "delta1")->required();
    red->add_option("--d2", red_args.d2, "delta2")->required();
    red->add_option("--lambda", red_args.lambda, "couplings L or L1,L2");
    red->add_flag("--matrix", red_args.matrix, "also print the reduced Hamiltonian");
    red->add_option("--out", red_args.out, "write a JSON summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(scan))
            return run_scan(scan_args, false);
        if (app.got_subcommand(cut))
            return run_scan(cut_args, true);
        if (app.got_subcommand(dyn))
            return run_dynamics(dyn_args);
        if (app.got_subcommand(rabi)) {
            rabi_args.two_color = om2->count() > 0;
            return run_rabi(rabi_args);
        }
        if (app.got_subcommand(scw)) {
            std::printf("%.5g\n", tmjc::super_resonance_cw(sc_omega0, sc_d1));
            return 0;
        }
        if (app.got_subcommand(spl)) {
            std::printf("%.5g\n", tmjc::super_resonance_pulsed(sp_d1, sp_omega));
            return 0;
        }
        if (app.got_subcommand(pred)) {
            auto [l1, l2] = parse_lambda(pr_lambda);
            if (pred->count("--omega-rabi") > 0)
                std::printf("%.10g\n", tmjc::dichromatic_predict(pr_d1, pr_omega_rabi));
            else
                std::printf("%.10g\n",
                            tmjc::resonance_predict(pr_n1, pr_n2, l1, l2, pr_d1));
            return 0;
        }
        if (app.got_subcommand(red))
            return run_reduce(red_args);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error (parse): %s\n", e.what());
        return 2;
    } catch (const tmjc::IoError& e) {
        std::fprintf(stderr, "error (io): %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error (parse): %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error (parse): %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error (numerical): %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error (numerical): %s\n", e.what());
        return 3;
    }
    return 0;
}

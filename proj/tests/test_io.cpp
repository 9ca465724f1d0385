#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tmjc/io.hpp"
#include "tmjc/svg_plot.hpp"

using namespace tmjc;

namespace {

ScanResult tiny_scan() {
    ScanGrid grid;
    grid.delta1_values = {1.0, 2.0};
    grid.delta2_values = {7.0, 9.0, 11.0};
    grid.params = {0.0, 0.0, 1.0, 1.0};
    grid.initial = {Level::G, 1, 0};
    grid.horizon = 30.0;
    return scan_detunings(grid);
}

OccupationTrace tiny_trace() {
    const Manifold m = Manifold::enumerate(2);
    const EigenDecomposition d = eigendecompose(build_hamiltonian(m, {4.62, 10.0, 1.0, 1.0}));
    const StateVector psi0 = basis_vector(m.size(), m.index_of({Level::G, 2, 0}));
    const std::vector<double> times{0.0, 0.5, 1.0, 1.5};
    const BasisState tracked[] = {{Level::G, 2, 0}, {Level::X, 1, 0}};
    return occupation_trace(d, m, psi0, times, tracked);
}

int count_lines_with_prefix(const std::string& text, char prefix) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line))
        if (!line.empty() && line.front() == prefix)
            ++n;
    return n;
}

} // namespace

TEST_CASE("doubles are printed round-trip exact") {
    for (const double v : {0.0, -1.5, 1.0 / 3.0, 4.6199999999999997, 1e-300, 2917.0304}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("scan CSV layout: config header, column row, one line per grid point") {
    const ScanResult r = tiny_scan();
    const Json config{{"command", "scan"}, {"lambda1", 1.0}};
    const std::string csv = scan_to_csv(r, config);

    CHECK(count_lines_with_prefix(csv, '#') == 2);
    CHECK(csv.find("# command = scan\n") != std::string::npos);
    CHECK(csv.find("# lambda1 = 1.0\n") != std::string::npos);
    CHECK(csv.find("delta1,delta2,max_occupation,t_at_max,degenerate_vicinity\n") !=
          std::string::npos);
    // 2 config lines + 1 column row + 6 data rows
    CHECK(static_cast<int>(std::count(csv.begin(), csv.end(), '\n')) == 9);

    // serialisation is deterministic byte for byte
    CHECK(scan_to_csv(r, config) == csv);
    CHECK(scan_to_json(r, config).dump(2) == scan_to_json(r, config).dump(2));
}

TEST_CASE("scan JSON carries the grid and row-major matrices") {
    const ScanResult r = tiny_scan();
    const Json j = scan_to_json(r, Json{{"command", "scan"}});
    CHECK(j.contains("config"));
    CHECK(j["delta1_values"].size() == 2);
    CHECK(j["delta2_values"].size() == 3);
    CHECK(j["max_occupation"].size() == 2);
    CHECK(j["max_occupation"][0].size() == 3);
    CHECK(j["argmax_time"].size() == 2);
    CHECK(j["degenerate_vicinity"][0][0].is_boolean());
    CHECK(j["max_occupation"][1][2].get<double>() == r.max_at(1, 2));
}

TEST_CASE("occupation trace serialises with per-ket columns") {
    const OccupationTrace tr = tiny_trace();
    const std::string csv = trace_to_csv(tr, Json::object());
    CHECK(csv.find("t,p_excited,n_mode1,n_mode2,p_g_2_0,p_x_1_0\n") != std::string::npos);
    CHECK(count_lines_with_prefix(csv, '#') == 0);

    const Json j = trace_to_json(tr, Json::object());
    CHECK(j["times"].size() == 4);
    CHECK(j["tracked"].contains("g,2,0"));
    CHECK(j["tracked"].contains("x,1,0"));
    CHECK(j["tracked"]["g,2,0"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-level trace serialises to the simple two-column form") {
    TwoLevelTrace tr;
    tr.times = {0.0, 0.1, 0.2};
    tr.p_excited = {0.0, 0.25, 0.75};
    const std::string csv = trace_to_csv(tr, Json{{"command", "rabi"}});
    CHECK(csv.find("t,p_excited\n") != std::string::npos);
    CHECK(csv.find("0.25") != std::string::npos);
    const Json j = trace_to_json(tr, Json::object());
    CHECK(j["p_excited"][2].get<double>() == 0.75);
}

TEST_CASE("svg renderers emit valid deterministic documents") {
    const ScanResult r = tiny_scan();
    const std::string heat = heatmap_svg(r, "map");
    CHECK(heat.rfind("<svg", 0) == 0);
    CHECK(heat.find("</svg>") != std::string::npos);
    CHECK(heat.find("map") != std::string::npos);
    CHECK(heatmap_svg(r, "map") == heat);

    LineSeries s;
    s.x = {0.0, 1.0, 2.0};
    s.y = {0.0, 1.0, 0.5};
    s.label = "p_x";
    s.color = "#1f77b4";
    const std::string line = line_plot_svg({s}, "t", "occupation", "trace");
    CHECK(line.rfind("<svg", 0) == 0);
    CHECK(line.find("polyline") != std::string::npos);
    CHECK(line.find("p_x") != std::string::npos);
    CHECK(line_plot_svg({s}, "t", "occupation", "trace") == line);
}

TEST_CASE("write_file faithfully stores bytes and reports bad paths") {
    const std::string path = "tmjc_io_test.tmp";
    write_file(path, "alpha,beta\n1,2\n");
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "alpha,beta\n1,2\n");
    in.close();
    std::remove(path.c_str());

    CHECK_THROWS_AS(write_file("no_such_dir/x.csv", "y"), IoError);
}

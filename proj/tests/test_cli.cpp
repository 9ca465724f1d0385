// End-to-end checks of the installed command-line tool.  The binary path
// arrives through the TMJC_BIN environment variable set by the test runner.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct CliResult {
    int status = -1;
    std::string output;  // stdout and stderr merged
};

CliResult run_cli(const std::string& args) {
    const char* bin = std::getenv("TMJC_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.output.append(buf, got);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("resonance predictors print bare numbers") {
    const CliResult cw = run_cli("super-cw --omega0 1 --d1 2");
    CHECK(cw.status == 0);
    CHECK(cw.output == "4.3589\n");

    const CliResult pulsed = run_cli("super-pulsed --omega1-max 4 --d1 3");
    CHECK(pulsed.status == 0);
    CHECK(pulsed.output == "8\n");

    const CliResult pred = run_cli("predict --n1 2 --d1 4.62");
    CHECK(pred.status == 0);
    CHECK(pred.output == "10.10580087\n");

    const CliResult dich = run_cli("predict --n1 2 --d1 -2 --omega-rabi 1");
    CHECK(dich.status == 0);
    CHECK(dich.output == "1\n");
}

TEST_CASE("cut command writes the table and prints a peak summary") {
    const std::string out = "cli_cut_test.csv";
    const CliResult r = run_cli("cut --initial g,2,0 --d1 3:6:40 --d2 10 --horizon 300 --out " +
                                out);
    CHECK(r.status == 0);
    CHECK((contains(r.output, "peaks:") || contains(r.output, "no peaks")));
    CHECK(contains(r.output, "wrote " + out));

    const std::string csv = slurp(out);
    CHECK(contains(csv, "# command = cut"));
    CHECK(contains(csv, "delta1,delta2,max_occupation,t_at_max,degenerate_vicinity"));
    std::remove(out.c_str());
}

TEST_CASE("dynamics from the vacuum stays dark") {
    const std::string out = "cli_dyn_test.csv";
    const CliResult r = run_cli(
        "dynamics --initial g,0,0 --d1 1 --d2 2 --t-end 5 --samples 6 --out " + out);
    CHECK(r.status == 0);
    CHECK(contains(r.output, "max P_x 0.000000 at t=0"));
    const std::string csv = slurp(out);
    CHECK(contains(csv, "t,p_excited,n_mode1,n_mode2"));
    CHECK(contains(csv, "5,0,0,0"));  // last sample: still fully dark
    std::remove(out.c_str());
}

TEST_CASE("single cw drive reports its deviation from the analytic formula") {
    const std::string out = "cli_rabi_test.csv";
    const CliResult r = run_cli(
        "rabi --omega 1 --delta 0 --t-end 3.14159265358979 --out " + out);
    CHECK(r.status == 0);
    CHECK(contains(r.output, "max P_x 1.000000"));
    CHECK(contains(r.output, "analytic Rabi deviation"));
    std::remove(out.c_str());
}

TEST_CASE("json format and svg plots are written on request") {
    const std::string out = "cli_dyn_test.json";
    const std::string plot = "cli_dyn_test.svg";
    const CliResult r = run_cli("dynamics --initial g,1,0 --d1 0 --d2 0 --t-end 3 "
                                "--samples 31 --format json --out " +
                                out + " --plot " + plot);
    CHECK(r.status == 0);
    const std::string json = slurp(out);
    CHECK(!json.empty());
    CHECK(json.front() == '{');
    CHECK(contains(json, "\"command\": \"dynamics\""));
    CHECK(contains(json, "\"p_excited\""));
    const std::string svg = slurp(plot);
    CHECK(svg.rfind("<svg", 0) == 0);
    std::remove(out.c_str());
    std::remove(plot.c_str());
}

TEST_CASE("reduce prints the effective two-level parameters") {
    const CliResult r = run_cli("reduce --n1 2 --n2 0 --d1 4.62 --d2 10 --matrix");
    CHECK(r.status == 0);
    CHECK(contains(r.output, "omega_eff = -0.113794"));
    CHECK(contains(r.output, "predicted_delta2 = 10.10580087"));
    CHECK(contains(r.output, "validity_ratio = 0.2629"));
    CHECK(contains(r.output, "|g,2,0|"));  // matrix rows labelled by ket
}

TEST_CASE("argument problems exit with status 2") {
    CHECK(run_cli("scan --d1 1:2 --d2 10").status == 2);          // malformed range
    CHECK(run_cli("dynamics --initial q,1,0 --t-end 1").status == 2);  // bad ket
    CHECK(run_cli("cut --d1 1:2:5 --d2 7:9:3 --out x.csv").status == 2);  // non-scalar d2
    CHECK(run_cli("scan --no-such-flag 1 --d1 1 --d2 2").status == 2);
    CHECK(run_cli("dynamics --initial g,1,0 --t-end 1 --samples 99999999").status == 2);
}

TEST_CASE("numerical domain problems exit with status 3") {
    CHECK(run_cli("reduce --n1 2 --n2 0 --d1 2 --d2 2").status == 3);
    CHECK(run_cli("predict --n1 2 --d1 0").status == 3);
}

TEST_CASE("unwritable output paths exit with status 4") {
    const CliResult r =
        run_cli("cut --d1 3:4:3 --d2 10 --horizon 10 --out no_such_dir/x.csv");
    CHECK(r.status == 4);
    CHECK(contains(r.output, "error (io)"));
}

TEST_CASE("help is available and succeeds") {
    const CliResult r = run_cli("--help");
    CHECK(r.status == 0);
    CHECK(contains(r.output, "scan"));
    CHECK(contains(r.output, "dynamics"));
}

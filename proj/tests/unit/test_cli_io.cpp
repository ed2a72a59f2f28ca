#include <doctest.h>

#include "approx.hpp"

#include "wigner/cli_io.hpp"
#include "wigner/validate.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

using namespace wigner;

TEST_CASE("parse delta command") {
    const ParseResult r = parse_args({"delta", "--state", "fock:n=2", "--tol", "1e-4"});
    REQUIRE(r.action == ParseResult::Action::run);
    CHECK(r.config.command == Command::delta);
    CHECK(std::get<FockState>(r.config.state).n == 2);
    CHECK(r.config.quad.tolerance == 1e-4);
    CHECK(r.config.format == OutputFormat::json);
    CHECK(r.config.out_path.empty());  // stdout
}

TEST_CASE("parse sweep command") {
    const ParseResult r = parse_args({"sweep", "--state", "cat", "--vary", "q0=0:6:0.025",
                                      "--fixed", "p0=0", "--format", "csv"});
    REQUIRE(r.action == ParseResult::Action::run);
    CHECK(r.config.command == Command::sweep);
    CHECK(r.config.vary.name == "q0");
    CHECK(r.config.vary.start == 0.0);
    CHECK(r.config.vary.stop == 6.0);
    CHECK(r.config.vary.step == 0.025);
    REQUIRE(r.config.fixed.size() == 1);
    CHECK(r.config.fixed[0].first == "p0");
    CHECK(r.config.format == OutputFormat::csv);
}

TEST_CASE("parse rejects bad state parameters with a diagnostic") {
    const ParseResult r = parse_args({"delta", "--state", "cat:q0=-1"});
    REQUIRE(r.action == ParseResult::Action::usage_error);
    CHECK(r.message.find("q0 must be >= 0") != std::string::npos);
}

TEST_CASE("parse rejects unknown flags and missing requireds") {
    CHECK(parse_args({"delta", "--state", "fock:n=1", "--frobnicate"}).action ==
          ParseResult::Action::usage_error);
    CHECK(parse_args({"delta"}).action == ParseResult::Action::usage_error);
    CHECK(parse_args({"frobnicate"}).action == ParseResult::Action::usage_error);
    CHECK(parse_args({}).action == ParseResult::Action::usage_error);
    CHECK(parse_args({"sweep", "--state", "cat", "--vary", "q0=0:6"}).action ==
          ParseResult::Action::usage_error);
    CHECK(parse_args({"fock-scan", "--nmax", "0"}).action == ParseResult::Action::usage_error);
    CHECK(parse_args({"delta", "--state", "fock:n=1", "--format", "matrix"}).action ==
          ParseResult::Action::usage_error);
}

TEST_CASE("help lists the state grammar") {
    const ParseResult r = parse_args({"--help"});
    REQUIRE(r.action == ParseResult::Action::help);
    CHECK(r.message.find("fock:n=3") != std::string::npos);
    CHECK(r.message.find("cat:q0=2,p0=4") != std::string::npos);
}

TEST_CASE("documented command lines re-serialize equivalently") {
    const std::vector<std::vector<std::string>> cases = {
        {"delta", "--state", "fock:n=2", "--tol", "1e-4"},
        {"sweep", "--state", "cat", "--vary", "q0=0:6:0.025", "--fixed", "p0=0",
         "--format", "csv"},
        {"eval", "--state", "cat:q0=2,p0=4", "--nq", "101", "--np", "81",
         "--window", "-3:3:-1:9"},
        {"fock-scan", "--nmax", "12", "--tol", "1e-3"},
    };
    for (const auto& argv : cases) {
        const ParseResult first = parse_args(argv);
        REQUIRE(first.action == ParseResult::Action::run);
        const ParseResult second = parse_args(to_argv(first.config));
        REQUIRE(second.action == ParseResult::Action::run);
        CHECK(to_argv(first.config) == to_argv(second.config));
    }
}

TEST_CASE("negativity json report") {
    NegativityResult r;
    r.delta = 0.4261226388505337;
    r.nu = r.delta / (1.0 + r.delta);
    r.i_minus = r.delta / 2.0;
    r.i_plus = 1.0 + r.i_minus;
    r.error_estimate = 2.5e-5;
    r.domain = {-7.75, 7.75, -7.75, 7.75};
    r.resolution_q = r.resolution_p = 992;
    std::ostringstream out;
    write_negativity_json(r, out);

    const auto j = nlohmann::json::parse(out.str());
    const std::vector<std::string> keys = {"delta", "nu", "i_plus", "i_minus",
                                           "error_estimate", "domain", "resolution"};
    CHECK(j.size() == keys.size());
    for (const auto& k : keys) REQUIRE(j.contains(k));
    CHECK(j["delta"].get<double>() == doctest::Approx(0.426122639).epsilon(1e-9));
    CHECK(j["domain"]["q_min"].get<double>() == -7.75);
    CHECK(j["resolution"]["nq"].get<int>() == 992);
    // nine significant digits survive the round trip
    CHECK(out.str().find("0.426122639") != std::string::npos);
    // key order is part of the format
    CHECK(out.str().rfind("{\"delta\":", 0) == 0);
}

TEST_CASE("sweep csv format") {
    SweepResult s;
    s.records = {{0.0, 0.0, 0.0, 1e-6, true}, {0.5, 0.25, 0.2, 2e-6, true}};
    std::ostringstream out;
    write_sweep_csv(s, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "param,delta,nu,error_estimate");
    std::string row;
    std::getline(lines, row);
    CHECK(row == "0,0,0,1e-06");
}

TEST_CASE("grid matrix format") {
    const PhaseGrid g = evaluate_grid(FockState{0}, {-7.0, 7.0, -7.0, 7.0}, 3, 3);
    std::ostringstream out;
    write_grid_matrix(g, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# q: -7 7 3");
    std::getline(lines, line);
    CHECK(line == "# p: -7 7 3");
    std::getline(lines, line);  // first q row
    std::getline(lines, line);  // center q row: corner, peak, corner
    CHECK(line.find("0.318309886") != std::string::npos);
    int remaining = 0;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++remaining;
    }
    CHECK(remaining == 1);  // three value rows in total
}

TEST_CASE("writers are deterministic") {
    const PhaseGrid g = evaluate_grid(CatState{2.0, 4.0}, {-3.0, 3.0, 1.0, 7.0}, 33, 33);
    std::ostringstream first, second;
    write_grid_matrix(g, first);
    write_grid_matrix(g, second);
    CHECK(first.str() == second.str());

    const NegativityResult r = delta_indicator(FockState{1});
    std::ostringstream ja, jb;
    write_negativity_json(r, ja);
    write_negativity_json(r, jb);
    CHECK(ja.str() == jb.str());
}

TEST_CASE("sweep json carries extrema and period") {
    SweepResult s;
    for (int i = 0; i < 12; ++i) {
        const double x = 0.1 * i;
        s.records.push_back({x, std::sin(x), 0.0, 0.0, true});
    }
    s.extrema = {{0.55, 0.52, ExtremumKind::maximum}};
    s.period_estimate = 3.14;
    std::ostringstream out;
    write_sweep_json(s, out);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["records"].size() == 12);
    CHECK(j["extrema"][0]["kind"] == "max");
    CHECK(j["period_estimate"].get<double>() == doctest::Approx(3.14));
}

TEST_CASE("plot script emission") {
    std::ostringstream sweep_script;
    write_sweep_plot_script("scan.csv", "q0", false, sweep_script);
    CHECK(sweep_script.str().find("'scan.csv'") != std::string::npos);
    CHECK(sweep_script.str().find("xlabel 'q0'") != std::string::npos);

    std::ostringstream fock_script;
    write_sweep_plot_script("ladder.csv", "n", true, fock_script);
    CHECK(fock_script.str().find("0.5*sqrt(x)") != std::string::npos);

    const PhaseGrid g = evaluate_grid(FockState{0}, {-2.0, 2.0, -2.0, 2.0}, 5, 5);
    std::ostringstream grid_script;
    write_grid_plot_script(g, "grid.dat", grid_script);
    CHECK(grid_script.str().find("matrix") != std::string::npos);
    CHECK(grid_script.str().find("'grid.dat'") != std::string::npos);
}

TEST_CASE("run_command writes delta json to the chosen stream") {
    ParseResult r = parse_args({"delta", "--state", "fock:n=1"});
    REQUIRE(r.action == ParseResult::Action::run);
    std::ostringstream out, err;
    const int code = run_command(r.config, out, err);
    CHECK(code == 0);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["delta"].get<double>() == AbsApprox{0.4261226, 1e-4});
}

TEST_CASE("run_command reports non-convergence with exit code 1") {
    ParseResult r = parse_args({"delta", "--state", "fock:n=3", "--tol", "1e-12",
                                "--max-refinements", "1"});
    REQUIRE(r.action == ParseResult::Action::run);
    std::ostringstream out, err;
    CHECK(run_command(r.config, out, err) == 1);
    CHECK(err.str().find("did not converge") != std::string::npos);
}

TEST_CASE("validation report formats pass and fail lines") {
    std::vector<CheckResult> checks = {
        {"fock n=1 delta", 0.42612, 0.4261226, 1e-4, true},
        {"made-up check", 2.0, 1.0, 1e-6, false},
    };
    std::ostringstream out;
    CHECK_FALSE(write_validation_report(checks, out));
    CHECK(out.str().find("fock n=1 delta") != std::string::npos);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(out.str().find("FAIL") != std::string::npos);

    std::ostringstream ok;
    checks.pop_back();
    CHECK(write_validation_report(checks, ok));
}

TEST_CASE("broken quadrature shows up as FAIL lines") {
    QuadratureConfig broken;
    broken.base_cells_per_unit = 1;
    broken.max_refinements = 1;
    broken.tolerance = 1e3;  // accepts the garbage estimate immediately
    const auto checks = run_validation(broken);
    std::ostringstream out;
    const bool all_pass = write_validation_report(checks, out);
    CHECK_FALSE(all_pass);
    CHECK(out.str().find("FAIL") != std::string::npos);
    // measured values are printed alongside the failures
    CHECK(out.str().find("measured") != std::string::npos);
}

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "phasewave/commands.hpp"
#include "phasewave/config.hpp"
#include "phasewave/error.hpp"

using namespace phasewave;
using nlohmann::json;

namespace {

json fixture_json() {
    return json::parse(R"({
      "d": 2,
      "left": {"rho": 1.0, "u": 0.9, "c2": 4.0, "pp": 0.5},
      "right": {"rho": 0.45, "u": 2.0, "c2": 9.0, "pp": 0.5},
      "mu": 1.0,
      "eta_t": [1.0],
      "sim": {"dk": 0.1, "N": 32, "dt": 0.01, "T": 1.0,
              "init": {"name": "single_mode", "amplitude": 0.3, "k0": 1.0}}
    })");
}

ErrorCode parse_code(const std::string& text) {
    try {
        parse_run_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::parameter;
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("phasewave_unit_" + name);
    std::filesystem::remove_all(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
    RunConfig c = parse_run_config(fixture_json().dump());
    CHECK(c.equilibrium.d == 2);
    CHECK_FALSE(c.equilibrium.from_eos);
    CHECK(c.eta_t.size() == 1);
    REQUIRE(c.sim);
    CHECK(c.sim->init.name == "single_mode");
    CHECK(c.kernel_samples == 20);
    CHECK(build_boundary(c.equilibrium).j == doctest::Approx(0.9));
}

TEST_CASE("config errors") {
    CHECK(parse_code("{") == ErrorCode::parse);
    CHECK(parse_code("[]") == ErrorCode::parse);
    json j = fixture_json();
    j["colour"] = "red";
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
    j = fixture_json();
    j["left"].erase("c2");
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
    j = fixture_json();
    j["left"]["rho"] = "one";
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
    j = fixture_json();
    j["eta_t"] = {1.0, 2.0};
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
    j = fixture_json();
    j["j"] = 0.1;
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
    j = fixture_json();
    j["scan"] = {{"eta0_min", 0.0}, {"eta0_max", 1.0}, {"steps", 1}};
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
    j = fixture_json();
    j["sim"]["init"]["shape"] = 1;
    CHECK(parse_code(j.dump()) == ErrorCode::parse);
}

TEST_CASE("check command") {
    CommandResult r = run_command("check", fixture_json().dump(), {});
    CHECK(r.exit_code == 0);
    json out = json::parse(r.out);
    CHECK(out["status"] == "pass");
    CHECK(out["invariants"].size() > 30);
    CHECK(out["debug"]["H"].size() == 4);

    json bad = fixture_json();
    bad["right"]["u"] = 2.5;
    r = run_command("check", bad.dump(), {});
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out)["status"] == "fail");
    CHECK(r.err.find("mass-flux") != std::string::npos);
}

TEST_CASE("scan command") {
    CommandResult r = run_command("scan", fixture_json().dump(), {});
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "eta0,re_delta_raw,im_delta_raw,re_delta_closed,im_delta_closed");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        double v[5];
        char c;
        std::istringstream ls(line);
        ls >> v[0] >> c >> v[1] >> c >> v[2] >> c >> v[3] >> c >> v[4];
        double scale = std::max(std::abs(v[1]), std::abs(v[3]));
        CHECK(std::hypot(v[1] - v[3], v[2] - v[4]) <= 1e-10 * scale);
    }
    CHECK(rows == 100);
    CHECK(r.err.find("sign change") != std::string::npos);

    json j = fixture_json();
    j["scan"] = {{"eta0_min", 0.0}, {"eta0_max", 5.0}, {"steps", 10}};
    CHECK(run_command("scan", j.dump(), {}).exit_code == 1);
}

TEST_CASE("root and coeffs commands") {
    CommandResult r = run_command("root", fixture_json().dump(), {});
    REQUIRE(r.exit_code == 0);
    json root = json::parse(r.out);
    CHECK(root["eta0"].get<double>() > 0.0);
    CHECK(root["sigma_star"].size() == 4);
    CHECK(root["gamma1"].size() == 2);

    r = run_command("coeffs", fixture_json().dump(), {});
    REQUIRE(r.exit_code == 0);
    json c = json::parse(r.out);
    CHECK(c["hunter_residual"].get<double>() == 0.0);
    CHECK(c["oracle_max_deviation"].get<double>() < 1e-9);
    CHECK(c["alpha0_imag_relative"].get<double>() < 1e-12);
    CHECK(c["identity_failures"].empty());
    CHECK(c["variant_form_discrepancies"].size() >= 5);
}

TEST_CASE("no surface wave") {
    json j = fixture_json();
    j["eta_t"] = {0.0};
    for (const char* cmd : {"root", "coeffs"}) {
        CommandResult r = run_command(cmd, j.dump(), {});
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("no surface wave") != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    CHECK(run_command("check", "{not json", {}).exit_code == 2);
    CHECK(run_command("frobnicate", fixture_json().dump(), {}).exit_code == 2);
    json j = fixture_json();
    j.erase("sim");
    CHECK(run_command("simulate", j.dump(), {}).exit_code == 1);
}

TEST_CASE("simulate writes diagnostics") {
    auto dir = scratch("sim");
    json j = fixture_json();
    j["sim"]["snapshots"] = true;
    j["sim"]["physical"] = true;
    CommandOptions opt;
    opt.out_dir = dir.string();
    CommandResult r = run_command("simulate", j.dump(), opt);
    REQUIRE(r.exit_code == 0);
    json s = json::parse(r.out);
    CHECK(s["steps"] == 100);
    CHECK(s["mean_drift"].get<double>() <= 1e-12);
    CHECK(std::filesystem::exists(dir / "diag.csv"));
    CHECK(std::filesystem::exists(dir / "snapshots.csv"));
    CHECK(std::filesystem::exists(dir / "physical.csv"));
    std::string diag = slurp(dir / "diag.csv");
    CHECK(diag.rfind("tau,mean_re,mean_im,l2,h2,max_abs\n", 0) == 0);
    CHECK(std::count(diag.begin(), diag.end(), '\n') == 12);
    std::filesystem::remove_all(dir);
}

TEST_CASE("zero amplitude gives an identically zero l2 column") {
    auto dir = scratch("zero");
    json j = fixture_json();
    j["sim"]["init"]["amplitude"] = 0.0;
    CommandOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(run_command("simulate", j.dump(), opt).exit_code == 0);
    std::istringstream in(slurp(dir / "diag.csv"));
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        REQUIRE(cols.size() == 6);
        CHECK(cols[3] == "0");
        ++rows;
    }
    CHECK(rows == 11);
    std::filesystem::remove_all(dir);
}

TEST_CASE("seed flag overrides the config seed") {
    json j = fixture_json();
    j["sim"]["init"] = {{"name", "random_smooth"}, {"amplitude", 0.5}};
    j["seed"] = 3;
    auto run = [&](std::optional<std::uint64_t> seed) {
        auto dir = scratch("seed");
        CommandOptions opt;
        opt.out_dir = dir.string();
        opt.seed = seed;
        REQUIRE(run_command("simulate", j.dump(), opt).exit_code == 0);
        std::string d = slurp(dir / "diag.csv");
        std::filesystem::remove_all(dir);
        return d;
    };
    std::string a = run(std::nullopt), b = run(3), c = run(4);
    CHECK(a == b);
    CHECK(a != c);
}

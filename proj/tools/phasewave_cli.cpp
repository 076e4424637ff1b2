#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "phasewave/phasewave.h"

int main(int argc, char** argv) {
    CLI::App app{"Surface waves on reversible liquid-vapor phase boundaries"};
    app.require_subcommand(1, 1);

    std::string config_path, out_dir;
    std::int64_t seed = 0;
    const char* names[] = {"check", "scan", "root", "coeffs", "simulate"};
    const char* help[] = {
        "validate an equilibrium and report all invariant residuals",
        "tabulate the determinant over an eta0 range (CSV)",
        "locate the surface-wave root and its boundary coefficients",
        "compute the amplitude-equation coefficients and kernel checks",
        "integrate the amplitude equation and write diagnostics",
    };
    CLI::Option* seed_opt = nullptr;
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory");
        auto* s = sub->add_option("--seed", seed, "random seed");
        if (i == 4) seed_opt = s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read config file " << config_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    bool has_seed = false;
    for (auto* opt : sub->get_options())
        if (opt->get_name() == "--seed" && opt->count() > 0) has_seed = true;
    (void)seed_opt;

    char* out = nullptr;
    char* err = nullptr;
    int code = 0;
    pw_status st = pw_run_command(sub->get_name().c_str(), text.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                                  has_seed ? 1 : 0, static_cast<std::uint64_t>(seed), &out, &err, &code);
    if (st != PW_OK) {
        std::cerr << pw_status_name(st) << ": " << pw_last_error() << "\n";
        return 1;
    }
    std::cout << out;
    std::cerr << err;
    pw_string_free(out);
    pw_string_free(err);
    return code;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "phasewave/amplitude.hpp"

namespace phasewave {

struct EquilibriumSpec {
    bool from_eos = false;
    int d = 2;
    // raw numbers
    FluidState left;
    FluidState right;
    double mu = 0.0;
    // equation of state
    double a = 0.0;
    double b = 0.0;
    double RT = 0.0;
    Interval bracket_left;
    Interval bracket_right;
    double j = 0.0;
};

struct ScanSpec {
    double eta0_min = 0.0;
    double eta0_max = 0.0;
    int steps = 100;
};

struct RunConfig {
    EquilibriumSpec equilibrium;
    RVector eta_t;
    std::optional<ScanSpec> scan;
    std::optional<SimConfig> sim;
    int kernel_samples = 20;
    std::string output_dir;
    std::uint64_t seed = 0;
};

// Throws Error(parse) on malformed JSON, unknown fields, missing fields or wrong types.
RunConfig parse_run_config(const std::string& text);

PhaseBoundary build_boundary(const EquilibriumSpec& spec);

}  // namespace phasewave

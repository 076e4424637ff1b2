#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace phasewave {

struct CommandOptions {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
};

struct CommandResult {
    int exit_code = 0;  // 0 ok, 1 invariant or validation failure, 2 parse failure
    std::string out;    // report for stdout
    std::string err;    // diagnostics for stderr
};

// command: check | scan | root | coeffs | simulate
CommandResult run_command(const std::string& command, const std::string& config_text,
                          const CommandOptions& options);

}  // namespace phasewave

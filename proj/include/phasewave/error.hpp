#pragma once

#include <stdexcept>
#include <string>

namespace phasewave {

enum class ErrorCode {
    parameter = 1,
    inconsistency,
    degeneracy,
    no_solution,
    admissibility,
    domain,
    shape,
    rank,
    no_root,
    integration_domain,
    config,
    parse,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace phasewave

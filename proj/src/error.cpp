#include "phasewave/error.hpp"

namespace phasewave {

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::inconsistency: return "inconsistency";
    case ErrorCode::degeneracy: return "degeneracy";
    case ErrorCode::no_solution: return "no-solution";
    case ErrorCode::admissibility: return "admissibility";
    case ErrorCode::domain: return "domain";
    case ErrorCode::shape: return "shape";
    case ErrorCode::rank: return "rank";
    case ErrorCode::no_root: return "no-root";
    case ErrorCode::integration_domain: return "integration-domain";
    case ErrorCode::config: return "config";
    case ErrorCode::parse: return "parse";
    }
    return "unknown";
}

}  // namespace phasewave

#include "phasewave/phasewave.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "phasewave/commands.hpp"
#include "phasewave/equilibrium.hpp"
#include "phasewave/error.hpp"
#include "phasewave/kernel.hpp"
#include "phasewave/lopatinskii.hpp"

using namespace phasewave;

struct pw_boundary {
    PhaseBoundary pb;
};
struct pw_root {
    RootData rd;
};
struct pw_kernel {
    RootData rd;
    KernelConstants kc;
    Kernel kernel;
};

namespace {

thread_local std::string last_error;

pw_status to_status(ErrorCode c) { return static_cast<pw_status>(static_cast<int>(c)); }

template <class F>
pw_status guard(F&& f) {
    last_error.clear();
    try {
        f();
        return PW_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return PW_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return PW_ERR_INTERNAL;
    }
}

pw_status null_arg(const char* what) {
    last_error = std::string("null argument: ") + what;
    return PW_ERR_NULL;
}

FluidState from_c(const pw_fluid_state& s) {
    FluidState f{s.rho, s.u, s.c2, s.pp, {}};
    if (s.has_p) f.p = s.p;
    return f;
}

pw_fluid_state to_c(const FluidState& f) {
    return {f.rho, f.u, f.c2, f.pp, f.p.value_or(0.0), f.p ? 1 : 0};
}

RVector tangential(const PhaseBoundary& pb, const double* eta_t) {
    RVector v(pb.d - 1);
    for (int i = 0; i < pb.d - 1; ++i) v(i) = eta_t[i];
    return v;
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

}  // namespace

extern "C" {

const char* pw_status_name(pw_status s) {
    switch (s) {
        case PW_OK: return "ok";
        case PW_ERR_NULL: return "null";
        case PW_ERR_INTERNAL: return "internal";
        default:
            if (s >= PW_ERR_PARAMETER && s <= PW_ERR_PARSE) return error_name(static_cast<ErrorCode>(s));
            return "unknown";
    }
}

const char* pw_last_error(void) { return last_error.c_str(); }

pw_status pw_boundary_create(const pw_fluid_state* left, const pw_fluid_state* right, int d, double mu,
                             pw_boundary** out) {
    if (!left || !right || !out) return null_arg("state or out");
    *out = nullptr;
    return guard([&] { *out = new pw_boundary{make_phase_boundary(from_c(*left), from_c(*right), d, mu)}; });
}

pw_status pw_boundary_from_vdw(double a, double b, double RT, double j, const double bracket_left[2],
                               const double bracket_right[2], int d, pw_boundary** out) {
    if (!bracket_left || !bracket_right || !out) return null_arg("bracket or out");
    *out = nullptr;
    return guard([&] {
        EquationOfState eos = vdw_eos(a, b, RT);
        *out = new pw_boundary{solve_reversible_boundary(eos, {bracket_left[0], bracket_left[1]},
                                                         {bracket_right[0], bracket_right[1]}, j, d)};
    });
}

pw_status pw_boundary_info_get(const pw_boundary* pb, pw_boundary_info* info) {
    if (!pb || !info) return null_arg("boundary or info");
    const PhaseBoundary& b = pb->pb;
    *info = {b.d, b.j, b.mu, b.jump_rho, b.jump_u, b.jump_p, to_c(b.left), to_c(b.right)};
    last_error.clear();
    return PW_OK;
}

void pw_boundary_destroy(pw_boundary* pb) { delete pb; }

pw_status pw_lopatinskii_det(const pw_boundary* pb, double eta0, const double* eta_t, int method, double* re,
                             double* im) {
    if (!pb || !eta_t || !re || !im) return null_arg("boundary, eta_t or output");
    return guard([&] {
        if (method != 0 && method != 1) fail(ErrorCode::parameter, "method must be 0 (raw) or 1 (closed)");
        cplx v = lopatinskii_det(pb->pb, Frequency{eta0, tangential(pb->pb, eta_t)},
                                 method == 0 ? DetMethod::raw : DetMethod::closed);
        *re = v.real();
        *im = v.imag();
    });
}

pw_status pw_elliptic_limit(const pw_boundary* pb, const double* eta_t, double* out) {
    if (!pb || !eta_t || !out) return null_arg("boundary, eta_t or output");
    return guard([&] { *out = elliptic_limit(pb->pb, tangential(pb->pb, eta_t)); });
}

pw_status pw_root_find(const pw_boundary* pb, const double* eta_t, pw_root** out) {
    if (!pb || !eta_t || !out) return null_arg("boundary, eta_t or out");
    *out = nullptr;
    return guard([&] { *out = new pw_root{find_root(pb->pb, tangential(pb->pb, eta_t))}; });
}

pw_status pw_root_eta0(const pw_root* r, double* eta0) {
    if (!r || !eta0) return null_arg("root or output");
    *eta0 = r->rd.eta.eta0;
    last_error.clear();
    return PW_OK;
}

pw_status pw_root_gammas(const pw_root* r, double gammas[4]) {
    if (!r || !gammas) return null_arg("root or output");
    gammas[0] = r->rd.gamma1.real();
    gammas[1] = r->rd.gamma1.imag();
    gammas[2] = r->rd.gamma2.real();
    gammas[3] = r->rd.gamma2.imag();
    last_error.clear();
    return PW_OK;
}

pw_status pw_root_sigma(const pw_root* r, double* sigma, size_t len) {
    if (!r || !sigma) return null_arg("root or output");
    return guard([&] {
        CVector s = r->rd.sigma.sigma();
        if (len < static_cast<size_t>(2 * s.size()))
            fail(ErrorCode::shape, "sigma buffer needs " + std::to_string(2 * s.size()) + " doubles");
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            sigma[2 * i] = s(i).real();
            sigma[2 * i + 1] = s(i).imag();
        }
    });
}

void pw_root_destroy(pw_root* r) { delete r; }

pw_status pw_kernel_create(const pw_root* r, pw_kernel** out) {
    if (!r || !out) return null_arg("root or out");
    *out = nullptr;
    return guard([&] {
        KernelConstants kc = kernel_constants(r->rd);
        *out = new pw_kernel{r->rd, kc, Kernel(kc)};
    });
}

pw_status pw_kernel_alpha0(const pw_kernel* k, double* alpha0) {
    if (!k || !alpha0) return null_arg("kernel or output");
    *alpha0 = k->kc.alpha0;
    last_error.clear();
    return PW_OK;
}

pw_status pw_kernel_eval(const pw_kernel* k, double kk, double kp, double* re, double* im) {
    if (!k || !re || !im) return null_arg("kernel or output");
    return guard([&] {
        cplx v = k->kernel.eval(kk, kp);
        *re = v.real();
        *im = v.imag();
    });
}

pw_status pw_kernel_q_oracle(const pw_kernel* k, double kk, double kp, double q[10]) {
    if (!k || !q) return null_arg("kernel or output");
    return guard([&] {
        auto v = q_oracle(k->rd, kk, kp);
        for (int i = 0; i < 5; ++i) {
            q[2 * i] = v[i].real();
            q[2 * i + 1] = v[i].imag();
        }
    });
}

pw_status pw_kernel_hunter_residual(const pw_kernel* k, double* out) {
    if (!k || !out) return null_arg("kernel or output");
    return guard([&] { *out = k->kernel.hunter_residual(); });
}

void pw_kernel_destroy(pw_kernel* k) { delete k; }

pw_status pw_run_command(const char* command, const char* config_json, const char* out_dir, int has_seed,
                         uint64_t seed, char** out_text, char** err_text, int* exit_code) {
    if (!command || !config_json || !out_text || !err_text || !exit_code)
        return null_arg("command, config, or output");
    *out_text = nullptr;
    *err_text = nullptr;
    return guard([&] {
        CommandOptions opt;
        if (out_dir) opt.out_dir = out_dir;
        if (has_seed) opt.seed = seed;
        CommandResult r = run_command(command, config_json, opt);
        *exit_code = r.exit_code;
        *out_text = dup(r.out);
        *err_text = dup(r.err);
        if (!*out_text || !*err_text) {
            std::free(*out_text);
            std::free(*err_text);
            *out_text = *err_text = nullptr;
            fail(ErrorCode::parameter, "out of memory");
        }
    });
}

void pw_string_free(char* s) { std::free(s); }

}  // extern "C"

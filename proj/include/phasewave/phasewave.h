#ifndef PHASEWAVE_H
#define PHASEWAVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PW_API __declspec(dllexport)
#else
#define PW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pw_status {
    PW_OK = 0,
    PW_ERR_PARAMETER = 1,
    PW_ERR_INCONSISTENCY = 2,
    PW_ERR_DEGENERACY = 3,
    PW_ERR_NO_SOLUTION = 4,
    PW_ERR_ADMISSIBILITY = 5,
    PW_ERR_DOMAIN = 6,
    PW_ERR_SHAPE = 7,
    PW_ERR_RANK = 8,
    PW_ERR_NO_ROOT = 9,
    PW_ERR_INTEGRATION_DOMAIN = 10,
    PW_ERR_CONFIG = 11,
    PW_ERR_PARSE = 12,
    PW_ERR_NULL = 13,
    PW_ERR_INTERNAL = 14
} pw_status;

typedef struct pw_boundary pw_boundary;
typedef struct pw_root pw_root;
typedef struct pw_kernel pw_kernel;

typedef struct pw_fluid_state {
    double rho;
    double u;
    double c2;
    double pp;     /* p''(rho) */
    double p;      /* pressure, used only when has_p != 0 */
    int has_p;
} pw_fluid_state;

typedef struct pw_boundary_info {
    int d;
    double j;
    double mu;
    double jump_rho;
    double jump_u;
    double jump_p;
    pw_fluid_state left;
    pw_fluid_state right;
} pw_boundary_info;

PW_API const char* pw_status_name(pw_status s);
/* Message of the last failed call on this thread; empty if none. */
PW_API const char* pw_last_error(void);

PW_API pw_status pw_boundary_create(const pw_fluid_state* left, const pw_fluid_state* right, int d,
                                    double mu, pw_boundary** out);
PW_API pw_status pw_boundary_from_vdw(double a, double b, double RT, double j, const double bracket_left[2],
                                      const double bracket_right[2], int d, pw_boundary** out);
PW_API pw_status pw_boundary_info_get(const pw_boundary* pb, pw_boundary_info* info);
PW_API void pw_boundary_destroy(pw_boundary* pb);

/* eta_t has d-1 entries. method: 0 = raw determinant, 1 = closed form. */
PW_API pw_status pw_lopatinskii_det(const pw_boundary* pb, double eta0, const double* eta_t, int method,
                                    double* re, double* im);
PW_API pw_status pw_elliptic_limit(const pw_boundary* pb, const double* eta_t, double* out);

PW_API pw_status pw_root_find(const pw_boundary* pb, const double* eta_t, pw_root** out);
PW_API pw_status pw_root_eta0(const pw_root* r, double* eta0);
/* gammas: re/im of gamma1 then gamma2 */
PW_API pw_status pw_root_gammas(const pw_root* r, double gammas[4]);
/* sigma has d+2 complex entries stored re, im interleaved; len is the capacity in doubles. */
PW_API pw_status pw_root_sigma(const pw_root* r, double* sigma, size_t len);
PW_API void pw_root_destroy(pw_root* r);

PW_API pw_status pw_kernel_create(const pw_root* r, pw_kernel** out);
PW_API pw_status pw_kernel_alpha0(const pw_kernel* k, double* alpha0);
PW_API pw_status pw_kernel_eval(const pw_kernel* k, double kk, double kp, double* re, double* im);
/* q1..q5 by exact integration: 10 doubles, re/im interleaved */
PW_API pw_status pw_kernel_q_oracle(const pw_kernel* k, double kk, double kp, double q[10]);
PW_API pw_status pw_kernel_hunter_residual(const pw_kernel* k, double* out);
PW_API void pw_kernel_destroy(pw_kernel* k);

/* Runs a CLI command on a JSON config. out_text and err_text are allocated and must be
   released with pw_string_free. out_dir may be NULL. */
PW_API pw_status pw_run_command(const char* command, const char* config_json, const char* out_dir,
                                int has_seed, uint64_t seed, char** out_text, char** err_text,
                                int* exit_code);
PW_API void pw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

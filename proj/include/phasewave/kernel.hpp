#pragma once

#include <array>
#include <utility>
#include <vector>

#include "phasewave/exp_profile.hpp"
#include "phasewave/lopatinskii.hpp"

namespace phasewave {

enum class AlphaMethod { closed, abstract_sum, fd_delta };

cplx alpha0(const RootData& root, AlphaMethod method);

struct TraceProfiles {
    ExpProfile profile;   // length 2(d+1): one term per block
    CVector trace_left;   // r^-(k, 0), length d+1
    CVector trace_right;  // r^+(k, 0), length d+1
};

TraceProfiles trace_profiles(const RootData& root, double k);

struct KernelConstants {
    double alpha0 = 0.0;
    cplx Q, Q_l, Q_r, Q_sharp, Q_b, Q_nat;
    cplx omega1, omega2, omega3;
    CVector ltilde1, ltilde2, ltilde3;
};

KernelConstants kernel_constants(const RootData& root);

// L(k, z) as the sum over sigma^* H R_p^+ exp(-k beta_p^+ z) (L_p^+)^*, k > 0.
ExpProfile dual_profile(const RootData& root, double k);
// The same profile assembled from omega_i / gamma and the reduced rows ltilde_i.
// sign_omega2 = +1 reproduces the sum; -1 gives the variant sign.
ExpProfile dual_profile_packaged(const RootData& root, const KernelConstants& kc, double k,
                                 double sign_omega2 = 1.0);

// q_1..q_5 by exact integration of the defining expressions.
std::array<cplx, 5> q_oracle(const RootData& root, double k, double kp);

// Region-wise closed form of the summed kernel built from the p'' combinations.
cplx kernel_closed_form(const RootData& root, const KernelConstants& kc, double k, double kp);

class Kernel {
public:
    Kernel() = default;
    explicit Kernel(const KernelConstants& kc) : kc_(kc) {}

    const KernelConstants& constants() const { return kc_; }
    cplx eval(double k, double kp) const;
    cplx a1(double k, double kp) const;
    // one-sided limits q(k, 0+) and q(k, 0-) for k > 0
    cplx limit_from_above(double k) const;
    cplx limit_from_below(double k) const;
    double hunter_residual() const;

private:
    KernelConstants kc_;
};

cplx kernel_eval(const Kernel& kernel, double k, double kp);

struct OracleSample {
    double k = 0.0;
    double kp = 0.0;
    cplx oracle;
    cplx closed;
    cplx kernel;
    double rel_dev = 0.0;
};

struct OracleReport {
    std::vector<OracleSample> samples;
    double max_rel_dev = 0.0;         // oracle vs region closed form
    double max_rel_dev_kernel = 0.0;  // oracle vs completed kernel
    double positive_spread = 0.0;     // max deviation between samples with k, k' > 0
    double mixed_spread = 0.0;        // same for q / (1 + k'/k) with k > 0 > k'
};

OracleReport oracle_vs_closed(const RootData& root, const std::vector<std::pair<double, double>>& samples);

// Default sample set: n points in each of the two closed-form regions.
std::vector<std::pair<double, double>> default_kernel_samples(int per_region);

ResidualList kernel_identities(const RootData& root, const KernelConstants& kc);

}  // namespace phasewave

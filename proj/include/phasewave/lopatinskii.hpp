#pragma once

#include "phasewave/modes.hpp"
#include "phasewave/types.hpp"

namespace phasewave {

enum class DetMethod { raw, closed };

cplx lopatinskii_det(const PhaseBoundary& pb, const Frequency& eta, DetMethod method);

// Natural magnitude of the closed form, |[rho][u] Y| P (|u_l u_r a_l a_r| + c_l^2 c_r^2 eta0^2),
// used as the reference for relative comparisons since the determinant itself vanishes at the root.
double lopatinskii_scale(const PhaseBoundary& pb, const Frequency& eta);

// F(eta0) = u_l u_r a_l a_r + c_l^2 c_r^2 eta0^2
double root_function(const PhaseBoundary& pb, const RVector& eta_t, double eta0);

struct DComponents {
    cplx D1;
    cplx D1_plus_mu_Dd2;
    cplx Dt;
    cplx Dd1;
    cplx Dd2;
};

DComponents d_components(const PhaseBoundary& pb, const Frequency& eta);

struct SigmaData {
    CVector star;  // the row sigma^*, so sigma^* X = star.transpose() * X
    DComponents D;
    double upsilon = 0.0;

    CVector sigma() const { return star.conjugate(); }
    cplx apply(const CVector& x) const { return star.cwiseProduct(x).sum(); }
};

enum class SigmaMethod { minors, closed };

SigmaData sigma_vector(const PhaseBoundary& pb, const Frequency& eta, SigmaMethod method);

struct GammaData {
    cplx gamma1;
    cplx gamma2;
    cplx gamma1_alt;
    cplx gamma2_alt;
};

GammaData gamma_coefficients(const PhaseBoundary& pb, const Frequency& eta);

struct RootData {
    PhaseBoundary pb;
    Frequency eta;
    ModeSet modes;
    TangentFrame frame;
    BoundaryOperators ops;
    SigmaData sigma;
    cplx gamma1;
    cplx gamma2;
    int sign_changes = 0;
};

// Smallest positive root of F in the elliptic interval, bisection then Newton polish.
double find_root_eta0(const PhaseBoundary& pb, const RVector& eta_t, int* sign_changes = nullptr);
RootData find_root(const PhaseBoundary& pb, const RVector& eta_t);

ResidualList lopatinskii_identities(const RootData& root);

}  // namespace phasewave

#pragma once

#include <vector>

#include "phasewave/equilibrium.hpp"
#include "phasewave/types.hpp"

namespace phasewave {

struct Frequency {
    double eta0 = 0.0;
    RVector eta_t;  // length d-1

    double tangential_norm_sq() const { return eta_t.squaredNorm(); }
};

// Upper end of the elliptic interval for eta0: |eta_t| min_side sqrt(c^2-u^2).
double elliptic_limit(const PhaseBoundary& pb, const RVector& eta_t);
bool is_elliptic(const PhaseBoundary& pb, const Frequency& eta);

struct TangentFrame {
    std::vector<RVector> e;       // e[0] = eta_t, e[1..] orthonormal basis of eta_t-perp
    std::vector<RVector> e_dual;  // e_dual[i] dual to e[i] within eta_t-perp, i >= 1; e_dual[0] empty
    double det_e = 0.0;
    double upsilon = 0.0;
};

TangentFrame tangent_frame(const RVector& eta_t, double u_r, double eta0);

enum class Side { left, right };
enum class Branch { minus, plus };

struct Mode {
    cplx beta;
    Side side = Side::left;
    CVector r;  // length d+1
    CVector l;  // length d+1, zero when undefined
};

struct ModeSet {
    int d = 2;
    double a_l = 0.0;
    double a_r = 0.0;
    // index 0..d holds mode number 1..d+1
    std::vector<Mode> minus;
    std::vector<Mode> plus;
    // false when eta0 = 0 and d >= 3: rows l_j, j >= 4, carry 1/eta0
    bool left_defined = true;

    const Mode& mode(Branch b, int j) const;
    // length 2(d+1) vectors with the small block placed on the mode's side
    CVector R(Branch b, int j) const;
    CVector L(Branch b, int j) const;
};

ModeSet normal_modes(const PhaseBoundary& pb, const Frequency& eta);

// A^1..A^d (index 0 holds A^1)
std::vector<RMatrix> flux_jacobians(const FluidState& s, int d);
RMatrix tangential_jacobian(const FluidState& s, const RVector& eta_t);

// Folded mode matrix i eta0 I + i sum eta_k A^k -/+ beta A^d (minus on the left side).
CMatrix mode_matrix(const FluidState& s, Side side, const Frequency& eta, cplx beta);
CMatrix folded_normal_jacobian(const PhaseBoundary& pb);

RVector entropy_gradient(const FluidState& s, double mu, int d);  // dg^0 at (rho, 0, rho u)
RVector normal_entropy_flux_gradient(const FluidState& s, double mu, int d);  // dg^0 A^d

enum class SecondDifferential { tangential_sum, normal_augmented };

// Bilinear forms from the polarized quadratic forms of the flux second differentials.
CVector second_differential(const FluidState& s, SecondDifferential which, const RVector& eta_t,
                            const CVector& x, const CVector& y);

struct BoundaryOperators {
    CMatrix H;     // (d+2) x 2(d+1)
    CVector Jeta;  // d+2
};

BoundaryOperators boundary_operators(const PhaseBoundary& pb, const Frequency& eta);

// (A^j r; dg^0 A^j r) summed with weights eta_j, j = 0..d-1 (A^0 = I).
CVector augmented_flux_differential(const FluidState& s, double mu, const Frequency& eta,
                                    const CVector& r);

}  // namespace phasewave

namespace phasewave {

// Residual suite of a ModeSet: eigen-relations, dispersion, conjugate pairs,
// biorthonormality against the folded normal Jacobian and the mirror symmetry.
ResidualList mode_invariants(const PhaseBoundary& pb, const Frequency& eta);

}  // namespace phasewave

#pragma once

#include <functional>
#include <optional>

namespace phasewave {

// Pressure law of an isothermal fluid and the derived quantities that enter
// the jump conditions. All functions are valid on (0, rho_max).
struct EquationOfState {
    std::function<double(double)> p;
    std::function<double(double)> c2;   // p'
    std::function<double(double)> pp;   // p''
    std::function<double(double)> g;    // Gibbs function, g' = p'/rho
    double rho_max = 0.0;
};

EquationOfState vdw_eos(double a, double b, double RT);

struct FluidState {
    double rho = 0.0;
    double u = 0.0;
    double c2 = 0.0;
    double pp = 0.0;
    std::optional<double> p;

    // Throws admissibility error unless rho > 0 and c2 > u^2 > 0 with u > 0.
    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Left (l) is the state ahead of the boundary, right (r) the state behind it.
// Jumps are [x] = x_r - x_l.
struct PhaseBoundary {
    FluidState left;
    FluidState right;
    int d = 2;
    double j = 0.0;
    double mu = 0.0;
    double jump_rho = 0.0;
    double jump_u = 0.0;
    double jump_p = 0.0;
};

PhaseBoundary make_phase_boundary(const FluidState& left, const FluidState& right,
                                  int d, double mu, double tol = 1e-10);

struct JumpResiduals {
    double momentum = 0.0;       // [p + j^2/rho]
    double reversibility = 0.0;  // [g + j^2/(2 rho^2)]
    double scale = 1.0;          // max(1, |p_l|)
};

JumpResiduals jump_residuals(const EquationOfState& eos, double rho_l, double rho_r, double j);

// Solves the momentum and reversibility jump conditions for (rho_l, rho_r) at
// the prescribed mass flux j > 0.
PhaseBoundary solve_reversible_boundary(const EquationOfState& eos, Interval rho_l,
                                        Interval rho_r, double j, int d);

}  // namespace phasewave

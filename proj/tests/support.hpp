#pragma once

#include <cmath>
#include <random>

#include "phasewave/equilibrium.hpp"
#include "phasewave/lopatinskii.hpp"
#include "phasewave/modes.hpp"

namespace pwtest {

using namespace phasewave;

inline PhaseBoundary fixture_a() {
    FluidState l{1.0, 0.9, 4.0, 0.5, {}};
    FluidState r{0.45, 2.0, 9.0, 0.5, {}};
    return make_phase_boundary(l, r, 2, 1.0);
}

inline RVector unit_tangent(int d) {
    RVector e = RVector::Zero(d - 1);
    e(0) = 1.0;
    return e;
}

class StateGen {
public:
    explicit StateGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    int pick(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

    // Subsonic on both sides, mass flux consistent, nonzero jumps.
    PhaseBoundary boundary(int d) {
        double rho_l = uniform(0.5, 2.0);
        double u_l = uniform(0.2, 1.5);
        double j = rho_l * u_l;
        double ratio = pick(0, 1) ? uniform(0.2, 0.9) : uniform(1.15, 3.0);
        double rho_r = ratio * rho_l;
        double u_r = j / rho_r;
        auto sound = [&](double u) { double m = uniform(0.1, 0.9); return u * u / (m * m); };
        FluidState l{rho_l, u_l, sound(u_l), uniform(-1.0, 2.0), {}};
        FluidState r{rho_r, u_r, sound(u_r), uniform(-1.0, 2.0), {}};
        return make_phase_boundary(l, r, d, uniform(-2.0, 2.0));
    }

    RVector tangent(int d) {
        RVector v(d - 1);
        for (int i = 0; i < d - 1; ++i) v(i) = uniform(-1.0, 1.0);
        if (v.norm() < 0.1) v(0) += 0.5;
        return v * (uniform(0.5, 2.0) / v.norm());
    }

    Frequency frequency(const PhaseBoundary& pb) {
        RVector et = tangent(pb.d);
        double emax = elliptic_limit(pb, et);
        return Frequency{uniform(-0.98, 0.98) * emax, et};
    }

private:
    std::mt19937_64 rng_;
};

// Second central difference of a vector field along x.
template <class F>
RVector fd_second(F&& f, const RVector& v, const RVector& x, double h) {
    return (f(v + h * x) - 2.0 * f(v) + f(v - h * x)) / (h * h);
}

template <class F>
RMatrix fd_jacobian(F&& f, const RVector& v, double h) {
    RVector f0 = f(v);
    RMatrix J(f0.size(), v.size());
    for (int i = 0; i < v.size(); ++i) {
        RVector e = RVector::Zero(v.size());
        e(i) = h;
        J.col(i) = (f(v + e) - f(v - e)) / (2.0 * h);
    }
    return J;
}

// Isothermal flux with a cubic free energy psi matched to (rho0, c2, pp):
// p = rho psi' - psi, so p' = rho psi'' and p'' = psi'' + rho psi'''.
struct CubicFluid {
    double rho0, psi2, psi3;
    CubicFluid(const FluidState& s) : rho0(s.rho), psi2(s.c2 / s.rho), psi3((s.pp - s.c2 / s.rho) / s.rho) {}
    double dpsi(double r) const { double x = r - rho0; return psi2 * x + 0.5 * psi3 * x * x; }
    double psi(double r) const { double x = r - rho0; return 0.5 * psi2 * x * x + psi3 * x * x * x / 6.0; }
    double p(double r) const { return r * dpsi(r) - psi(r); }

    // flux in direction k (0-based, k = d-1 is normal) of v = (rho, j_1..j_d)
    RVector flux(const RVector& v, int k) const {
        const int d = static_cast<int>(v.size()) - 1;
        RVector f(d + 1);
        double rho = v(0);
        f(0) = v(1 + k);
        for (int i = 0; i < d; ++i) f(1 + i) = v(1 + k) * v(1 + i) / rho;
        f(1 + k) += p(rho);
        return f;
    }
    // normal flux of the entropy up to terms linear in v
    double entropy_flux(const RVector& v) const {
        const int d = static_cast<int>(v.size()) - 1;
        double rho = v(0);
        return (dpsi(rho) + v.tail(d).squaredNorm() / (2.0 * rho * rho)) * v(d);
    }
};

}  // namespace pwtest

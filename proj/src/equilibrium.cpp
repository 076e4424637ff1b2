#include "phasewave/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasewave/error.hpp"

namespace phasewave {

EquationOfState vdw_eos(double a, double b, double RT) {
    if (!(a >= 0.0)) fail(ErrorCode::parameter, "vdw: a must be nonnegative");
    if (!(b > 0.0)) fail(ErrorCode::parameter, "vdw: b must be positive");
    if (!(RT > 0.0)) fail(ErrorCode::parameter, "vdw: RT must be positive");

    EquationOfState eos;
    eos.rho_max = 1.0 / b;
    auto check = [b](double rho) {
        if (!(rho > 0.0 && b * rho < 1.0))
            fail(ErrorCode::domain, "vdw: density outside (0, 1/b)");
    };
    eos.p = [=](double rho) {
        check(rho);
        return RT * rho / (1.0 - b * rho) - a * rho * rho;
    };
    eos.c2 = [=](double rho) {
        check(rho);
        double s = 1.0 - b * rho;
        return RT / (s * s) - 2.0 * a * rho;
    };
    eos.pp = [=](double rho) {
        check(rho);
        double s = 1.0 - b * rho;
        return 2.0 * b * RT / (s * s * s) - 2.0 * a;
    };
    // antiderivative of p'/rho = RT/(rho (1-b rho)^2) - 2a
    eos.g = [=](double rho) {
        check(rho);
        double s = 1.0 - b * rho;
        return RT * (std::log(rho / s) + 1.0 / s) - 2.0 * a * rho;
    };
    return eos;
}

void FluidState::validate() const {
    std::ostringstream msg;
    if (!(std::isfinite(rho) && std::isfinite(u) && std::isfinite(c2) && std::isfinite(pp)))
        fail(ErrorCode::parameter, "fluid state has non-finite fields");
    if (!(rho > 0.0)) {
        msg << "density must be positive (rho=" << rho << ")";
        fail(ErrorCode::admissibility, msg.str());
    }
    if (!(u > 0.0)) {
        msg << "normal velocity must be positive (u=" << u << ")";
        fail(ErrorCode::admissibility, msg.str());
    }
    if (!(c2 > u * u)) {
        msg << "state is not subsonic (c2=" << c2 << ", u^2=" << u * u << ")";
        fail(ErrorCode::admissibility, msg.str());
    }
}

PhaseBoundary make_phase_boundary(const FluidState& left, const FluidState& right,
                                  int d, double mu, double tol) {
    if (d < 2) fail(ErrorCode::parameter, "dimension d must be at least 2");
    if (!std::isfinite(mu)) fail(ErrorCode::parameter, "mu must be finite");
    left.validate();
    right.validate();

    PhaseBoundary pb;
    pb.left = left;
    pb.right = right;
    pb.d = d;
    pb.mu = mu;
    pb.j = left.rho * left.u;

    double flux_r = right.rho * right.u;
    if (std::abs(pb.j - flux_r) > tol * std::abs(pb.j)) {
        std::ostringstream msg;
        msg << "mass-flux mismatch: rho_l u_l = " << pb.j << ", rho_r u_r = " << flux_r;
        fail(ErrorCode::inconsistency, msg.str());
    }

    pb.jump_rho = right.rho - left.rho;
    pb.jump_u = right.u - left.u;
    if (pb.jump_rho == 0.0) fail(ErrorCode::degeneracy, "density jump is zero");
    if (pb.jump_u == 0.0) fail(ErrorCode::degeneracy, "velocity jump is zero");

    if (left.p && right.p) {
        pb.jump_p = *right.p - *left.p;
        double mom = pb.jump_p + pb.j * pb.jump_u;
        if (std::abs(mom) > tol * std::max(1.0, std::abs(*left.p))) {
            std::ostringstream msg;
            msg << "normal momentum jump " << mom << " exceeds tolerance";
            fail(ErrorCode::inconsistency, msg.str());
        }
    } else {
        // [p + j u] = 0
        pb.jump_p = -pb.j * pb.jump_u;
    }
    return pb;
}

JumpResiduals jump_residuals(const EquationOfState& eos, double rho_l, double rho_r, double j) {
    JumpResiduals r;
    double j2 = j * j;
    r.momentum = (eos.p(rho_r) + j2 / rho_r) - (eos.p(rho_l) + j2 / rho_l);
    r.reversibility = (eos.g(rho_r) + 0.5 * j2 / (rho_r * rho_r)) -
                      (eos.g(rho_l) + 0.5 * j2 / (rho_l * rho_l));
    r.scale = std::max(1.0, std::abs(eos.p(rho_l)));
    return r;
}

namespace {

bool inside(double x, Interval iv) { return x >= iv.lo && x <= iv.hi; }

double norm2(const JumpResiduals& r) { return std::hypot(r.momentum, r.reversibility); }

// Bisection for f on [lo, hi]; requires a sign change.
template <class F>
bool bisect(F&& f, double lo, double hi, double& root) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) { root = lo; return true; }
    if (fhi == 0.0) { root = hi; return true; }
    if ((flo < 0.0) == (fhi < 0.0)) return false;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    root = 0.5 * (lo + hi);
    return true;
}

bool newton(const EquationOfState& eos, Interval bl, Interval br, double j,
            double& rho_l, double& rho_r) {
    rho_l = 0.5 * (bl.lo + bl.hi);
    rho_r = 0.5 * (br.lo + br.hi);
    double j2 = j * j;
    for (int it = 0; it < 200; ++it) {
        JumpResiduals r = jump_residuals(eos, rho_l, rho_r, j);
        double scale = std::max({1.0, std::abs(eos.p(rho_l)), std::abs(eos.g(rho_l))});
        double res = norm2(r);
        if (!std::isfinite(res)) return false;
        if (res < 1e-13 * scale) return true;

        double ml = eos.c2(rho_l) - j2 / (rho_l * rho_l);
        double mr = eos.c2(rho_r) - j2 / (rho_r * rho_r);
        // rows: momentum, reversibility; columns: rho_l, rho_r
        double a11 = -ml, a12 = mr;
        double a21 = -ml / rho_l, a22 = mr / rho_r;
        double det = a11 * a22 - a12 * a21;
        if (det == 0.0 || !std::isfinite(det)) return false;
        double dl = -(a22 * r.momentum - a12 * r.reversibility) / det;
        double dr = -(-a21 * r.momentum + a11 * r.reversibility) / det;

        double t = 1.0;
        bool accepted = false;
        for (int h = 0; h <= 40; ++h, t *= 0.5) {
            double nl = rho_l + t * dl, nr = rho_r + t * dr;
            if (!inside(nl, bl) || !inside(nr, br)) continue;
            if (norm2(jump_residuals(eos, nl, nr, j)) < res) {
                rho_l = nl;
                rho_r = nr;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // stalled at round-off level counts as converged
            return res < 1e-11 * scale;
        }
    }
    return false;
}

void nested_bisection(const EquationOfState& eos, Interval bl, Interval br, double j,
                      double& rho_l, double& rho_r) {
    double j2 = j * j;
    auto inner = [&](double rl, double& rr) {
        double target = eos.p(rl) + j2 / rl;
        auto m = [&](double x) { return eos.p(x) + j2 / x - target; };
        return bisect(m, br.lo, br.hi, rr);
    };
    auto outer = [&](double rl) {
        double rr = 0.0;
        if (!inner(rl, rr))
            fail(ErrorCode::no_solution, "momentum jump has no sign change in the right bracket");
        return jump_residuals(eos, rl, rr, j).reversibility;
    };
    if (!bisect(outer, bl.lo, bl.hi, rho_l))
        fail(ErrorCode::no_solution, "reversibility jump has no sign change in the left bracket");
    if (!inner(rho_l, rho_r))
        fail(ErrorCode::no_solution, "momentum jump has no sign change in the right bracket");
}

}  // namespace

PhaseBoundary solve_reversible_boundary(const EquationOfState& eos, Interval bl,
                                        Interval br, double j, int d) {
    if (!(bl.lo > 0.0 && bl.lo < bl.hi && br.lo > 0.0 && br.lo < br.hi))
        fail(ErrorCode::parameter, "brackets must be positive, nondegenerate intervals");
    if (eos.rho_max > 0.0 && (bl.hi >= eos.rho_max || br.hi >= eos.rho_max))
        fail(ErrorCode::parameter, "bracket exceeds the equation-of-state domain");
    if (bl.hi > br.lo && br.hi > bl.lo)
        fail(ErrorCode::degeneracy, "brackets overlap, so rho_l = rho_r cannot be excluded");
    if (!(j > 0.0)) fail(ErrorCode::parameter, "mass flux j must be positive");

    double rho_l = 0.0, rho_r = 0.0;
    if (!newton(eos, bl, br, j, rho_l, rho_r)) nested_bisection(eos, bl, br, j, rho_l, rho_r);

    auto state = [&](double rho) {
        FluidState s;
        s.rho = rho;
        s.u = j / rho;
        s.c2 = eos.c2(rho);
        s.pp = eos.pp(rho);
        s.p = eos.p(rho);
        return s;
    };
    FluidState left = state(rho_l), right = state(rho_r);
    if (!(left.c2 > left.u * left.u && right.c2 > right.u * right.u))
        fail(ErrorCode::admissibility, "solved boundary is not subsonic on both sides");
    double mu = 0.5 * left.u * left.u + eos.g(rho_l);
    return make_phase_boundary(left, right, d, mu, 1e-10);
}

}  // namespace phasewave

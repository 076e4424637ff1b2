#include "phasewave/lopatinskii.hpp"

#include <cmath>
#include <limits>

#include "phasewave/error.hpp"

namespace phasewave {

namespace {

struct Radicals {
    double aL;
    double aR;
};

Radicals radicals(const PhaseBoundary& pb, double n2, double e0) {
    const FluidState& L = pb.left;
    const FluidState& R = pb.right;
    double xl = (L.c2 - L.u * L.u) * n2 - e0 * e0;
    double xr = (R.c2 - R.u * R.u) * n2 - e0 * e0;
    // rounding at the edge of the interval
    const double edge = 8.0 * std::numeric_limits<double>::epsilon() * e0 * e0;
    if (xl < 0.0 && xl >= -edge) xl = 0.0;
    if (xr < 0.0 && xr >= -edge) xr = 0.0;
    if (!(xl >= 0.0 && xr >= 0.0)) fail(ErrorCode::domain, "frequency outside the elliptic region");
    return {-std::sqrt(L.c2) * std::sqrt(xl), std::sqrt(R.c2) * std::sqrt(xr)};
}

void require_elliptic(const PhaseBoundary& pb, const Frequency& eta) {
    if (eta.eta_t.size() != pb.d - 1) fail(ErrorCode::shape, "eta_t must have length d-1");
    if (!(eta.eta_t.norm() > 0.0)) fail(ErrorCode::degeneracy, "tangential wavevector is zero");
    if (!is_elliptic(pb, eta)) fail(ErrorCode::domain, "frequency outside the elliptic region");
}

CMatrix stable_columns(const PhaseBoundary& pb, const ModeSet& ms, const BoundaryOperators& ops) {
    const int d = pb.d;
    CMatrix C(d + 2, d + 1);
    for (int j = 1; j <= d + 1; ++j) C.col(j - 1) = ops.H * ms.R(Branch::minus, j);
    return C;
}

}  // namespace

double root_function(const PhaseBoundary& pb, const RVector& eta_t, double eta0) {
    Radicals a = radicals(pb, eta_t.squaredNorm(), eta0);
    return pb.left.u * pb.right.u * a.aL * a.aR + pb.left.c2 * pb.right.c2 * eta0 * eta0;
}

cplx lopatinskii_det(const PhaseBoundary& pb, const Frequency& eta, DetMethod method) {
    require_elliptic(pb, eta);
    const int d = pb.d;
    if (method == DetMethod::raw) {
        ModeSet ms = normal_modes(pb, eta);
        BoundaryOperators ops = boundary_operators(pb, eta);
        CMatrix M(d + 2, d + 2);
        M.col(0) = ops.Jeta;
        M.rightCols(d + 1) = stable_columns(pb, ms, ops);
        return M.partialPivLu().determinant();
    }
    double n2 = eta.tangential_norm_sq();
    double e0 = eta.eta0;
    TangentFrame f = tangent_frame(eta.eta_t, pb.right.u, e0);
    double P = e0 * e0 + pb.right.u * pb.right.u * n2;
    return -pb.jump_rho * pb.jump_u * f.upsilon * P * root_function(pb, eta.eta_t, e0);
}

double lopatinskii_scale(const PhaseBoundary& pb, const Frequency& eta) {
    require_elliptic(pb, eta);
    double n2 = eta.tangential_norm_sq();
    double e0 = eta.eta0;
    Radicals a = radicals(pb, n2, e0);
    TangentFrame f = tangent_frame(eta.eta_t, pb.right.u, e0);
    double P = e0 * e0 + pb.right.u * pb.right.u * n2;
    double terms = std::abs(pb.left.u * pb.right.u * a.aL * a.aR) +
                   pb.left.c2 * pb.right.c2 * e0 * e0;
    return std::abs(pb.jump_rho * pb.jump_u * f.upsilon) * P * terms;
}

DComponents d_components(const PhaseBoundary& pb, const Frequency& eta) {
    const FluidState& L = pb.left;
    const FluidState& R = pb.right;
    const double e0 = eta.eta0;
    const double n2 = eta.tangential_norm_sq();
    const double ju = pb.jump_u;
    Radicals a = radicals(pb, n2, e0);
    const double aL = a.aL, aR = a.aR;
    const double P = e0 * e0 + R.u * R.u * n2;

    DComponents D;
    D.D1_plus_mu_Dd2 = -P * (ju * L.c2 * R.c2 * e0 - I * L.u * R.u * (R.c2 * aL - L.c2 * aR));
    D.Dt = -ju * R.u * (aL * (R.u * aR - I * R.c2 * e0) + aR * (L.u * aL - I * L.c2 * e0));
    D.Dd1 = -I * P * (R.u * R.c2 * aL - L.u * L.c2 * aR);
    D.Dd2 = ju * e0 * (aL * aR + L.c2 * R.c2 * n2) + I * e0 * e0 * (R.c2 * aL - L.c2 * aR) -
            I * n2 * (R.u * (L.u - 2.0 * R.u) * R.c2 * aL + L.u * R.u * L.c2 * aR);
    D.D1 = D.D1_plus_mu_Dd2 - pb.mu * D.Dd2;
    return D;
}

SigmaData sigma_vector(const PhaseBoundary& pb, const Frequency& eta, SigmaMethod method) {
    require_elliptic(pb, eta);
    const int d = pb.d;
    SigmaData s;
    s.D = d_components(pb, eta);
    s.upsilon = tangent_frame(eta.eta_t, pb.right.u, eta.eta0).upsilon;
    s.star = CVector::Zero(d + 2);

    if (method == SigmaMethod::minors) {
        ModeSet ms = normal_modes(pb, eta);
        BoundaryOperators ops = boundary_operators(pb, eta);
        CMatrix C = stable_columns(pb, ms, ops);
        Eigen::FullPivLU<CMatrix> rank_check(C);
        if (rank_check.rank() < d + 1)
            fail(ErrorCode::rank, "columns H R_j^- are linearly dependent");
        CMatrix M(d + 2, d + 2);
        M.rightCols(d + 1) = C;
        for (int i = 0; i < d + 2; ++i) {
            M.col(0) = CVector::Unit(d + 2, i);
            s.star(i) = M.partialPivLu().determinant();
        }
        return s;
    }
    s.star(0) = s.D.D1;
    for (int k = 0; k < d - 1; ++k) s.star(1 + k) = s.D.Dt * eta.eta_t(k);
    s.star(d) = s.D.Dd1;
    s.star(d + 1) = s.D.Dd2;
    s.star *= s.upsilon;
    return s;
}

GammaData gamma_coefficients(const PhaseBoundary& pb, const Frequency& eta) {
    const FluidState& L = pb.left;
    const FluidState& R = pb.right;
    const double e0 = eta.eta0;
    const double jr = pb.jump_rho;
    Radicals a = radicals(pb, eta.tangential_norm_sq(), e0);
    const double aL = a.aL, aR = a.aR;
    cplx den1 = R.u * aL - I * L.c2 * e0;
    cplx den2 = L.u * aR - I * R.c2 * e0;
    if (den1 == 0.0 || den2 == 0.0) fail(ErrorCode::degeneracy, "vanishing gamma denominator");
    GammaData g;
    g.gamma1 = jr * R.u * e0 / den1;
    g.gamma2 = -jr * L.u * e0 / den2;
    g.gamma1_alt = -I * jr * R.c2 * e0 * e0 / (aL * den2);
    g.gamma2_alt = I * jr * L.c2 * e0 * e0 / (aR * den1);
    return g;
}

double find_root_eta0(const PhaseBoundary& pb, const RVector& eta_t, int* sign_changes) {
    if (eta_t.size() != pb.d - 1) fail(ErrorCode::shape, "eta_t must have length d-1");
    double hi = elliptic_limit(pb, eta_t);
    if (!(hi > 0.0)) fail(ErrorCode::no_root, "empty elliptic interval (zero tangential wavevector)");
    auto F = [&](double e0) { return root_function(pb, eta_t, e0); };

    // coarse scan to count sign changes and select the smallest bracket
    const int samples = 256;
    int changes = 0;
    double lo_b = -1.0, hi_b = -1.0;
    double prev_x = 0.0, prev_f = F(0.0);
    for (int i = 1; i <= samples; ++i) {
        double x = hi * i / samples;
        double fx = F(x);
        if ((prev_f < 0.0) != (fx < 0.0)) {
            if (changes == 0) {
                lo_b = prev_x;
                hi_b = x;
            }
            ++changes;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (sign_changes) *sign_changes = changes;
    if (changes == 0) fail(ErrorCode::no_root, "F has no sign change in the elliptic interval");

    double flo = F(lo_b);
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo_b + hi_b);
        if (mid <= lo_b || mid >= hi_b) break;
        double fm = F(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo_b = mid;
            flo = fm;
        } else {
            hi_b = mid;
        }
    }
    double x = 0.5 * (lo_b + hi_b);
    double fx = F(x);
    for (int it = 0; it < 10 && fx != 0.0; ++it) {
        double h = 1e-7 * x;
        if (x + h >= hi) break;
        double dF = (F(x + h) - F(x - h)) / (2.0 * h);
        if (dF == 0.0) break;
        double xn = x - fx / dF;
        if (!(xn > 0.0 && xn < hi)) break;
        double fn = F(xn);
        if (!(std::abs(fn) < std::abs(fx))) break;
        x = xn;
        fx = fn;
    }
    return x;
}

RootData find_root(const PhaseBoundary& pb, const RVector& eta_t) {
    RootData rd;
    rd.pb = pb;
    rd.eta.eta_t = eta_t;
    rd.eta.eta0 = find_root_eta0(pb, eta_t, &rd.sign_changes);
    rd.modes = normal_modes(pb, rd.eta);
    rd.frame = tangent_frame(eta_t, pb.right.u, rd.eta.eta0);
    rd.ops = boundary_operators(pb, rd.eta);
    rd.sigma = sigma_vector(pb, rd.eta, SigmaMethod::minors);
    GammaData g = gamma_coefficients(pb, rd.eta);
    rd.gamma1 = g.gamma1;
    rd.gamma2 = g.gamma2;
    return rd;
}

ResidualList lopatinskii_identities(const RootData& rd) {
    const PhaseBoundary& pb = rd.pb;
    const FluidState& L = pb.left;
    const FluidState& R = pb.right;
    const double e0 = rd.eta.eta0;
    const double n2 = rd.eta.tangential_norm_sq();
    const double jr = pb.jump_rho, ju = pb.jump_u;
    const double aL = rd.modes.a_l, aR = rd.modes.a_r;
    const double P = e0 * e0 + R.u * R.u * n2;
    const CVector& J = rd.ops.Jeta;
    ResidualList out;

    double F = root_function(pb, rd.eta.eta_t, e0);
    out.push_back({"root-relation", std::abs(F) / (L.c2 * R.c2 * e0 * e0), 1e-12});

    Frequency fp = rd.eta, fm = rd.eta;
    double h = 1e-6 * e0;
    fp.eta0 += h;
    fm.eta0 -= h;
    cplx dDelta = (lopatinskii_det(pb, fp, DetMethod::closed) -
                   lopatinskii_det(pb, fm, DetMethod::closed)) / (2.0 * h);
    cplx delta = lopatinskii_det(pb, rd.eta, DetMethod::closed);
    out.push_back({"delta-at-root", std::abs(delta) / std::abs(e0 * dDelta), 1e-12});

    cplx raw = lopatinskii_det(pb, rd.eta, DetMethod::raw);
    out.push_back({"delta-raw-vs-closed", std::abs(raw - delta) / lopatinskii_scale(pb, rd.eta),
                   1e-10});

    CVector HR1 = rd.ops.H * rd.modes.R(Branch::minus, 1);
    CVector HR2 = rd.ops.H * rd.modes.R(Branch::minus, 2);
    out.push_back({"gamma-relation", (J + rd.gamma1 * HR1 + rd.gamma2 * HR2).norm() / J.norm(),
                   1e-10});
    GammaData g = gamma_coefficients(pb, rd.eta);
    out.push_back({"gamma1-forms", rel_diff(g.gamma1, g.gamma1_alt), 1e-12});
    out.push_back({"gamma2-forms", rel_diff(g.gamma2, g.gamma2_alt), 1e-12});
    cplx ratio = g.gamma2 / g.gamma1;
    out.push_back({"gamma-ratio", rel_diff(ratio, I * L.c2 * e0 / (R.u * aR)), 1e-10});
    out.push_back({"gamma-ratio-variant", rel_diff(ratio, I * L.c2 * e0 * e0 / (R.u * aR)),
                   0.0, true});

    SigmaData closed = sigma_vector(pb, rd.eta, SigmaMethod::closed);
    const CVector& s = rd.sigma.star;
    double smax = s.cwiseAbs().maxCoeff();
    out.push_back({"sigma-minors-vs-closed", (s - closed.star).cwiseAbs().maxCoeff() / smax,
                   1e-10});
    out.push_back({"sigma-orthogonal-HR1", std::abs(rd.sigma.apply(HR1)) / (s.norm() * HR1.norm()),
                   1e-10});
    out.push_back({"sigma-orthogonal-J", std::abs(rd.sigma.apply(J)) / (s.norm() * J.norm()), 1e-10});

    const DComponents& D = closed.D;
    out.push_back({"Dd1-nonzero", D.Dd1 == 0.0 ? 1.0 : 0.0, 0.5});

    const cplx g1 = rd.gamma1, g2 = rd.gamma2;
    out.push_back({"gamma1-Dt-relation",
                   rel_diff(g1 * D.Dt, -jr * ju * R.u * e0 * (R.u * aR - I * R.c2 * e0)), 1e-10});
    out.push_back({"gamma2-Dt-relation",
                   rel_diff(g2 * D.Dt, jr * ju * R.u * e0 * (L.u * aL - I * L.c2 * e0)), 1e-10});
    out.push_back({"gamma1-Dd1-relation",
                   rel_diff(g1 * D.Dd1, -jr * R.u * P * (L.u * aR + I * R.c2 * e0)), 1e-10});
    out.push_back({"gamma2-Dd1-relation",
                   rel_diff(g2 * D.Dd1, -jr * L.u * P * (R.u * aL + I * L.c2 * e0)), 1e-10});
    out.push_back({"gamma1-Dd2-relation",
                   rel_diff(g1 * D.Dd2, jr * P * (R.u * aR + I * R.c2 * e0) -
                                            jr * ju * R.u * n2 * (R.u * aR - I * R.c2 * e0)),
                   1e-10});
    out.push_back({"gamma2-Dd2-relation",
                   rel_diff(g2 * D.Dd2, jr * P * (L.u * aL + I * L.c2 * e0) +
                                            jr * ju * R.u * n2 * (L.u * aL - I * L.c2 * e0)),
                   1e-10});
    out.push_back({"Dd1-factorization-1",
                   rel_diff(e0 * D.Dd1, -P * (R.u * aL - I * L.c2 * e0) * (L.u * aR + I * R.c2 * e0)),
                   1e-10});
    out.push_back({"Dd1-factorization-2",
                   rel_diff(e0 * D.Dd1, P * (R.u * aL + I * L.c2 * e0) * (L.u * aR - I * R.c2 * e0)),
                   1e-10});
    cplx t1 = D.D1, t2 = e0 * D.Dt, t3 = 2.0 * R.u * D.Dd1, t4 = (pb.mu + R.u * R.u) * D.Dd2;
    double tmax = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
    out.push_back({"D1-relation", std::abs(t1 + t2 + t3 + t4) / tmax, 1e-10});
    return out;
}

}  // namespace phasewave

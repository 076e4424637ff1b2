#include "phasewave/modes.hpp"

#include <algorithm>
#include <cmath>

#include "phasewave/error.hpp"

namespace phasewave {

double elliptic_limit(const PhaseBoundary& pb, const RVector& eta_t) {
    double n = eta_t.norm();
    double sl = pb.left.c2 - pb.left.u * pb.left.u;
    double sr = pb.right.c2 - pb.right.u * pb.right.u;
    return n * std::sqrt(std::min(sl, sr));
}

bool is_elliptic(const PhaseBoundary& pb, const Frequency& eta) {
    double n2 = eta.tangential_norm_sq();
    double e2 = eta.eta0 * eta.eta0;
    auto ok = [&](const FluidState& s) { return (s.c2 - s.u * s.u) * n2 - e2 > 0.0; };
    return n2 > 0.0 && ok(pb.left) && ok(pb.right);
}

TangentFrame tangent_frame(const RVector& eta_t, double u_r, double eta0) {
    const int m = static_cast<int>(eta_t.size());
    if (m < 1) fail(ErrorCode::shape, "tangential wavevector must have length d-1 >= 1");
    double nrm = eta_t.norm();
    if (!(nrm > 0.0)) fail(ErrorCode::degeneracy, "tangential wavevector is zero");

    TangentFrame f;
    f.e.push_back(eta_t);
    f.e_dual.emplace_back();

    if (m > 1) {
        // Householder reflector sending e_p to sign(n_p) n, p the largest component.
        RVector n = eta_t / nrm;
        Eigen::Index p = 0;
        n.cwiseAbs().maxCoeff(&p);
        RVector v = n;
        v(p) -= (n(p) >= 0.0 ? 1.0 : -1.0);
        RMatrix P = RMatrix::Identity(m, m);
        double vv = v.squaredNorm();
        if (vv > 0.0) P -= 2.0 * v * v.transpose() / vv;
        for (int i = 0; i < m; ++i) {
            if (i == p) continue;
            RVector c = P.col(i);
            c -= c.dot(n) * n;
            c.normalize();
            f.e.push_back(c);
        }
        RMatrix E(m, m - 1);
        for (int i = 1; i < m; ++i) E.col(i - 1) = f.e[i];
        RMatrix G = E.transpose() * E;
        RMatrix dual = E * G.inverse();
        for (int i = 1; i < m; ++i) f.e_dual.push_back(dual.col(i - 1));
    }

    RMatrix E(m, m);
    for (int i = 0; i < m; ++i) E.col(i) = f.e[i];
    f.det_e = E.determinant();
    f.upsilon = std::pow(-u_r * eta0, m - 1) * u_r * f.det_e;
    return f;
}

const Mode& ModeSet::mode(Branch b, int j) const {
    if (j < 1 || j > d + 1) fail(ErrorCode::shape, "mode index out of range");
    return b == Branch::minus ? minus[j - 1] : plus[j - 1];
}

namespace {

CVector embed(const CVector& v, Side side, int n) {
    CVector out = CVector::Zero(2 * n);
    out.segment(side == Side::left ? 0 : n, n) = v;
    return out;
}

CVector stack(cplx first, const CVector& mid, cplx last) {
    CVector v(mid.size() + 2);
    v(0) = first;
    v.segment(1, mid.size()) = mid;
    v(mid.size() + 1) = last;
    return v;
}

}  // namespace

CVector ModeSet::R(Branch b, int j) const {
    const Mode& m = mode(b, j);
    return embed(m.r, m.side, d + 1);
}

CVector ModeSet::L(Branch b, int j) const {
    const Mode& m = mode(b, j);
    if (!left_defined && j >= 4)
        fail(ErrorCode::domain, "left eigenvectors l_j, j >= 4, are undefined at eta0 = 0");
    return embed(m.l, m.side, d + 1);
}

ModeSet normal_modes(const PhaseBoundary& pb, const Frequency& eta) {
    const int d = pb.d;
    if (eta.eta_t.size() != d - 1) fail(ErrorCode::shape, "eta_t must have length d-1");
    if (!is_elliptic(pb, eta)) fail(ErrorCode::domain, "frequency outside the elliptic region");

    const FluidState& L = pb.left;
    const FluidState& R = pb.right;
    const double e0 = eta.eta0;
    const double n2 = eta.tangential_norm_sq();
    const CVector et = eta.eta_t.cast<cplx>();
    const TangentFrame frame = tangent_frame(eta.eta_t, R.u, e0);

    ModeSet ms;
    ms.d = d;
    ms.minus.resize(d + 1);
    ms.plus.resize(d + 1);
    const double sl = L.c2 - L.u * L.u;
    const double sr = R.c2 - R.u * R.u;
    const double aL = -std::sqrt(L.c2) * std::sqrt(sl * n2 - e0 * e0);
    const double aR = std::sqrt(R.c2) * std::sqrt(sr * n2 - e0 * e0);
    ms.a_l = aL;
    ms.a_r = aR;

    const cplx b1m = (aL - I * L.u * e0) / sl;
    const cplx b1p = (-aL - I * L.u * e0) / sl;
    const cplx b2m = (-aR + I * R.u * e0) / sr;
    const cplx b2p = (aR + I * R.u * e0) / sr;

    Mode& m1 = ms.minus[0];
    Mode& p1 = ms.plus[0];
    Mode& m2 = ms.minus[1];
    Mode& p2 = ms.plus[1];
    m1.side = p1.side = Side::left;
    m2.side = p2.side = Side::right;
    m1.beta = b1m;
    p1.beta = b1p;
    m2.beta = b2m;
    p2.beta = b2p;

    m1.r = stack(-I * e0 + L.u * b1m, I * L.c2 * et, -aL);
    p1.r = stack(I * e0 - L.u * b1p, -I * L.c2 * et, -aL);
    m2.r = stack(-I * e0 - R.u * b2m, I * R.c2 * et, -aR);
    p2.r = stack(I * e0 + R.u * b2p, -I * R.c2 * et, -aR);

    auto pref = [e0](const FluidState& s, double a, double sg) {
        return (s.c2 - s.u * s.u) / (2.0 * a * (s.u * a + sg * I * s.c2 * e0));
    };
    m1.l = pref(L, aL, 1.0) * stack(I * e0 - 2.0 * L.u * b1p, -I * et, b1p);
    p1.l = pref(L, aL, -1.0) * stack(-I * e0 + 2.0 * L.u * b1m, I * et, -b1m);
    m2.l = pref(R, aR, 1.0) * stack(-I * e0 - 2.0 * R.u * b2p, I * et, b2p);
    p2.l = pref(R, aR, -1.0) * stack(I * e0 + 2.0 * R.u * b2m, -I * et, -b2m);

    ms.left_defined = !(e0 == 0.0 && d >= 3);
    for (int j = 3; j <= d + 1; ++j) {
        Mode& mp = ms.plus[j - 1];
        Mode& mm = ms.minus[j - 1];
        mp.side = Side::left;
        mm.side = Side::right;
        mp.beta = I * e0 / L.u;
        mm.beta = -I * e0 / R.u;
        const RVector& e = frame.e[j - 3];
        double ee = eta.eta_t.dot(e);
        mp.r = stack(0.0, (e0 * e).cast<cplx>(), L.u * ee);
        mm.r = stack(0.0, (e0 * e).cast<cplx>(), R.u * ee);
        if (j == 3) {
            double PL = e0 * e0 + L.u * L.u * n2;
            double PR = e0 * e0 + R.u * R.u * n2;
            mp.l = stack(L.u, (-e0 / (L.u * n2)) * et, -1.0) / PL;
            mm.l = stack(-R.u, (e0 / (R.u * n2)) * et, 1.0) / PR;
        } else if (ms.left_defined) {
            CVector ed = frame.e_dual[j - 3].cast<cplx>();
            mp.l = stack(0.0, ed, 0.0) * (-1.0 / (L.u * e0));
            mm.l = stack(0.0, ed, 0.0) * (1.0 / (R.u * e0));
        } else {
            mp.l = CVector::Zero(d + 1);
            mm.l = CVector::Zero(d + 1);
        }
    }
    return ms;
}

std::vector<RMatrix> flux_jacobians(const FluidState& s, int d) {
    s.validate();
    if (d < 2) fail(ErrorCode::parameter, "dimension d must be at least 2");
    const int n = d + 1;
    std::vector<RMatrix> A;
    for (int k = 1; k < d; ++k) {
        RMatrix a = RMatrix::Zero(n, n);
        a(0, k) = 1.0;
        a(k, 0) = s.c2;
        a(d, k) = s.u;
        A.push_back(a);
    }
    RMatrix ad = RMatrix::Zero(n, n);
    ad(0, d) = 1.0;
    for (int k = 1; k < d; ++k) ad(k, k) = s.u;
    ad(d, 0) = s.c2 - s.u * s.u;
    ad(d, d) = 2.0 * s.u;
    A.push_back(ad);
    return A;
}

RMatrix tangential_jacobian(const FluidState& s, const RVector& eta_t) {
    const int d = static_cast<int>(eta_t.size()) + 1;
    auto A = flux_jacobians(s, d);
    RMatrix M = RMatrix::Zero(d + 1, d + 1);
    for (int k = 0; k < d - 1; ++k) M += eta_t(k) * A[k];
    return M;
}

CMatrix mode_matrix(const FluidState& s, Side side, const Frequency& eta, cplx beta) {
    const int d = static_cast<int>(eta.eta_t.size()) + 1;
    RMatrix Ad = flux_jacobians(s, d).back();
    CMatrix M = I * eta.eta0 * CMatrix::Identity(d + 1, d + 1);
    M += I * tangential_jacobian(s, eta.eta_t).cast<cplx>();
    double sg = side == Side::left ? -1.0 : 1.0;
    M += sg * beta * Ad.cast<cplx>();
    return M;
}

CMatrix folded_normal_jacobian(const PhaseBoundary& pb) {
    const int n = pb.d + 1;
    CMatrix A = CMatrix::Zero(2 * n, 2 * n);
    A.topLeftCorner(n, n) = -flux_jacobians(pb.left, pb.d).back().cast<cplx>();
    A.bottomRightCorner(n, n) = flux_jacobians(pb.right, pb.d).back().cast<cplx>();
    return A;
}

RVector entropy_gradient(const FluidState& s, double mu, int d) {
    RVector g = RVector::Zero(d + 1);
    g(0) = mu - s.u * s.u;
    g(d) = s.u;
    return g;
}

RVector normal_entropy_flux_gradient(const FluidState& s, double mu, int d) {
    RVector g = RVector::Zero(d + 1);
    g(0) = s.u * (s.c2 - s.u * s.u);
    g(d) = s.u * s.u + mu;
    return g;
}

CVector second_differential(const FluidState& s, SecondDifferential which, const RVector& eta_t,
                            const CVector& x, const CVector& y) {
    const int d = static_cast<int>(eta_t.size()) + 1;
    if (x.size() != d + 1 || y.size() != d + 1)
        fail(ErrorCode::shape, "second differential arguments must have length d+1");
    const CVector et = eta_t.cast<cplx>();

    auto tangential = [&](const CVector& v) {
        CVector out = CVector::Zero(d + 1);
        cplx rho = v(0);
        CVector jt = v.segment(1, d - 1);
        cplx jd = v(d);
        cplx ej = et.cwiseProduct(jt).sum();
        out.segment(1, d - 1) += s.pp * rho * rho * et + (2.0 / s.rho) * ej * jt;
        out(d) += (2.0 / s.rho) * ej * (jd - s.u * rho);
        return out;
    };
    auto normal = [&](const CVector& v) {
        CVector out = CVector::Zero(d + 2);
        cplx rho = v(0);
        CVector jt = v.segment(1, d - 1);
        cplx jd = v(d);
        cplx w = jd - s.u * rho;
        cplx jj = (jt.array() * jt.array()).sum();
        out(d) += s.pp * rho * rho + (2.0 / s.rho) * w * w;
        out(d + 1) += s.pp * s.u * rho * rho;
        out.segment(1, d - 1) += (2.0 / s.rho) * w * jt;
        out(d + 1) += (3.0 * s.u * w * w - s.u * s.c2 * rho * rho + 2.0 * s.c2 * rho * jd +
                       s.u * jj) / s.rho;
        return out;
    };

    CVector sum = x + y, diff = x - y;
    if (which == SecondDifferential::tangential_sum)
        return 0.25 * (tangential(sum) - tangential(diff));
    return 0.25 * (normal(sum) - normal(diff));
}

BoundaryOperators boundary_operators(const PhaseBoundary& pb, const Frequency& eta) {
    const int d = pb.d;
    const int n = d + 1;
    if (eta.eta_t.size() != d - 1) fail(ErrorCode::shape, "eta_t must have length d-1");
    BoundaryOperators ops;
    ops.H = CMatrix::Zero(d + 2, 2 * n);
    auto block = [&](const FluidState& s, double sg, int off) {
        RMatrix Ad = flux_jacobians(s, d).back();
        ops.H.block(0, off, n, n) = sg * Ad.cast<cplx>();
        ops.H.block(d + 1, off, 1, n) =
            sg * normal_entropy_flux_gradient(s, pb.mu, d).transpose().cast<cplx>();
    };
    block(pb.left, 1.0, 0);
    block(pb.right, -1.0, n);

    ops.Jeta = CVector::Zero(d + 2);
    ops.Jeta(0) = pb.jump_rho * eta.eta0;
    for (int k = 0; k < d - 1; ++k) ops.Jeta(1 + k) = pb.jump_p * eta.eta_t(k);
    ops.Jeta(d + 1) = (pb.mu * pb.jump_rho - pb.jump_p) * eta.eta0;
    return ops;
}

CVector augmented_flux_differential(const FluidState& s, double mu, const Frequency& eta,
                                    const CVector& r) {
    const int d = static_cast<int>(eta.eta_t.size()) + 1;
    if (r.size() != d + 1) fail(ErrorCode::shape, "vector must have length d+1");
    RMatrix M = eta.eta0 * RMatrix::Identity(d + 1, d + 1) + tangential_jacobian(s, eta.eta_t);
    CVector v = M.cast<cplx>() * r;
    CVector out(d + 2);
    out.head(d + 1) = v;
    out(d + 1) = entropy_gradient(s, mu, d).cast<cplx>().cwiseProduct(v).sum();
    return out;
}

}  // namespace phasewave

namespace phasewave {

ResidualList mode_invariants(const PhaseBoundary& pb, const Frequency& eta) {
    const int d = pb.d;
    const int n = d + 1;
    ModeSet ms = normal_modes(pb, eta);
    const double e0 = eta.eta0;
    const double n2 = eta.tangential_norm_sq();
    ResidualList out;

    auto side_state = [&](Side s) -> const FluidState& { return s == Side::left ? pb.left : pb.right; };
    double right_res = 0.0, left_res = 0.0;
    for (Branch b : {Branch::minus, Branch::plus}) {
        for (int j = 1; j <= n; ++j) {
            const Mode& m = ms.mode(b, j);
            const FluidState& s = side_state(m.side);
            CMatrix M = mode_matrix(s, m.side, eta, m.beta);
            double an = flux_jacobians(s, d).back().norm();
            right_res = std::max(right_res, (M * m.r).norm() / (m.r.norm() * an));
            if (ms.left_defined)
                left_res = std::max(left_res, (m.l.adjoint() * M).norm() / (m.l.norm() * an));
        }
    }
    out.push_back({"eigenvector-right", right_res, 1e-11});
    if (ms.left_defined) out.push_back({"eigenvector-left", left_res, 1e-11});

    double disp = 0.0;
    auto poly = [&](const FluidState& s, cplx beta, double sg) {
        cplx v = (s.c2 - s.u * s.u) * beta * beta + sg * 2.0 * I * s.u * e0 * beta + e0 * e0 - s.c2 * n2;
        return std::abs(v) / (s.c2 * n2);
    };
    for (Branch b : {Branch::minus, Branch::plus}) {
        disp = std::max(disp, poly(pb.left, ms.mode(b, 1).beta, 1.0));
        disp = std::max(disp, poly(pb.right, ms.mode(b, 2).beta, -1.0));
    }
    out.push_back({"dispersion", disp, 1e-12});

    double conj_beta = 0.0, conj_r = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const Mode& mm = ms.mode(Branch::minus, j);
        const Mode& mp = ms.mode(Branch::plus, j);
        conj_beta = std::max(conj_beta, std::abs(mp.beta + std::conj(mm.beta)) / std::abs(mm.beta));
        conj_r = std::max(conj_r, (mp.r - mm.r.conjugate()).norm() / mm.r.norm());
    }
    out.push_back({"conjugate-pairs-beta", conj_beta, 1e-14});
    out.push_back({"conjugate-pairs-r", conj_r, 1e-14});

    double imag3 = 0.0;
    for (int j = 3; j <= n; ++j)
        imag3 = std::max({imag3, std::abs(ms.mode(Branch::plus, j).beta.real()),
                          std::abs(ms.mode(Branch::minus, j).beta.real())});
    out.push_back({"imaginary-modes", imag3, 0.0});

    if (ms.left_defined) {
        CMatrix A = folded_normal_jacobian(pb);
        double bio = 0.0;
        for (Branch bi : {Branch::minus, Branch::plus})
            for (int i = 1; i <= n; ++i) {
                CVector Li = ms.L(bi, i);
                for (Branch bj : {Branch::minus, Branch::plus})
                    for (int j = 1; j <= n; ++j) {
                        cplx g = Li.dot(A * ms.R(bj, j));
                        cplx want = (bi == bj && i == j) ? 1.0 : 0.0;
                        bio = std::max(bio, std::abs(g - want));
                    }
            }
        out.push_back({"biorthonormality", bio, 1e-10});
    }

    // conj(beta), S conj(r) is a mode at (-eta0, eta_t), S = diag(1, -I, 1)
    Frequency mirror = eta;
    mirror.eta0 = -e0;
    ModeSet mm = normal_modes(pb, mirror);
    double mir = 0.0;
    for (Branch b : {Branch::minus, Branch::plus})
        for (int j = 1; j <= n; ++j) {
            const Mode& m = ms.mode(b, j);
            const FluidState& s = side_state(m.side);
            CVector r = m.r.conjugate();
            r.segment(1, d - 1) *= -1.0;
            CMatrix M = mode_matrix(s, m.side, mirror, std::conj(m.beta));
            double an = flux_jacobians(s, d).back().norm();
            mir = std::max(mir, (M * r).norm() / (r.norm() * an));
            mir = std::max(mir, std::abs(mm.mode(b, j).beta - std::conj(m.beta)) /
                                    std::max(1.0, std::abs(m.beta)));
        }
    out.push_back({"mirror-symmetry", mir, 1e-11});

    BoundaryOperators ops = boundary_operators(pb, eta);
    double cons = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const Mode& m = ms.mode(Branch::minus, j);
        const FluidState& s = side_state(m.side);
        CVector lhs = augmented_flux_differential(s, pb.mu, eta, m.r);
        CVector rhs = -I * m.beta * (ops.H * ms.R(Branch::minus, j));
        cons = std::max(cons, (lhs - rhs).norm() / std::max(lhs.norm(), rhs.norm()));
    }
    out.push_back({"flux-differential-consistency", cons, 1e-12});

    double row = 0.0;
    for (int c = 0; c < 2 * n; ++c) {
        double want = c == d ? 1.0 : (c == 2 * n - 1 ? -1.0 : 0.0);
        row = std::max(row, std::abs(ops.H(0, c) - want));
    }
    out.push_back({"H-first-row", row, 0.0});
    return out;
}

}  // namespace phasewave

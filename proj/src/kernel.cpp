#include "phasewave/kernel.hpp"

#include <cmath>
#include <numbers>

#include "phasewave/error.hpp"

namespace phasewave {

namespace {

struct Ctx {
    const PhaseBoundary& pb;
    const FluidState& L;
    const FluidState& R;
    int d;
    int n;
    double e0;
    double n2;
    double aL;
    double aR;
    double upsilon;
    double P;
    double PL;

    explicit Ctx(const RootData& rd)
        : pb(rd.pb), L(rd.pb.left), R(rd.pb.right), d(rd.pb.d), n(rd.pb.d + 1),
          e0(rd.eta.eta0), n2(rd.eta.tangential_norm_sq()), aL(rd.modes.a_l),
          aR(rd.modes.a_r), upsilon(rd.frame.upsilon),
          P(e0 * e0 + R.u * R.u * n2), PL(e0 * e0 + L.u * L.u * n2) {}
};

CVector join(const CVector& a, const CVector& b) {
    CVector v(a.size() + b.size());
    v << a, b;
    return v;
}

cplx bdot(const CVector& a, const CVector& b) { return a.cwiseProduct(b).sum(); }

// Tangential part eta0 I + sum eta_k A^k for one side.
CMatrix tangential_symbol(const FluidState& s, const Frequency& eta) {
    const int n = static_cast<int>(eta.eta_t.size()) + 2;
    RMatrix M = eta.eta0 * RMatrix::Identity(n, n) + tangential_jacobian(s, eta.eta_t);
    return M.cast<cplx>();
}

}  // namespace

cplx alpha0(const RootData& rd, AlphaMethod method) {
    Ctx c(rd);
    if (method == AlphaMethod::closed) {
        const FluidState& L = c.L;
        const FluidState& R = c.R;
        double brace = L.u * L.u * R.u * R.u * (c.aL * c.aL / L.c2 + c.aR * c.aR / R.c2) +
                       2.0 * L.c2 * R.c2 * c.e0 * c.e0;
        return -c.pb.jump_rho * c.pb.jump_u * c.upsilon / c.e0 * c.P * brace;
    }
    if (method == AlphaMethod::fd_delta) {
        double h = 1e-5 * c.e0;
        Frequency fp = rd.eta, fm = rd.eta;
        fp.eta0 += h;
        fm.eta0 -= h;
        return (lopatinskii_det(c.pb, fp, DetMethod::closed) -
                lopatinskii_det(c.pb, fm, DetMethod::closed)) / (2.0 * h);
    }

    // sigma^*[f0] + sum_{p,q} i sigma^* H R_p^+ (L_p^+)^* gamma_q R_q^- / (beta_p^+ - beta_q^-)
    CVector pv = CVector::Zero(c.d + 2);
    for (int k = 0; k < c.d - 1; ++k) pv(1 + k) = c.pb.jump_p * rd.eta.eta_t(k);
    CVector f0 = (rd.ops.Jeta - pv) / c.e0;
    cplx a = rd.sigma.apply(f0);
    const cplx gam[2] = {rd.gamma1, rd.gamma2};
    for (int p = 1; p <= c.d + 1; ++p) {
        cplx sh = rd.sigma.apply(rd.ops.H * rd.modes.R(Branch::plus, p));
        CVector Lp = rd.modes.L(Branch::plus, p).conjugate();
        for (int q = 1; q <= 2; ++q) {
            cplx num = bdot(Lp, gam[q - 1] * rd.modes.R(Branch::minus, q));
            if (num == 0.0) continue;
            cplx den = rd.modes.mode(Branch::plus, p).beta - rd.modes.mode(Branch::minus, q).beta;
            a += I * sh * num / den;
        }
    }
    return a;
}

TraceProfiles trace_profiles(const RootData& rd, double k) {
    if (k == 0.0) fail(ErrorCode::degeneracy, "trace profiles need k != 0");
    const ModeSet& m = rd.modes;
    const int n = rd.pb.d + 1;
    TraceProfiles tp;
    tp.profile = ExpProfile(2 * n);
    Branch b = k > 0 ? Branch::minus : Branch::plus;
    cplx g1 = k > 0 ? rd.gamma1 : std::conj(rd.gamma1);
    cplx g2 = k > 0 ? rd.gamma2 : std::conj(rd.gamma2);
    tp.profile.add(g1 * m.R(b, 1), k * m.mode(b, 1).beta);
    tp.profile.add(g2 * m.R(b, 2), k * m.mode(b, 2).beta);
    tp.trace_left = g1 * m.mode(b, 1).r;
    tp.trace_right = g2 * m.mode(b, 2).r;
    return tp;
}

ExpProfile dual_profile(const RootData& rd, double k) {
    if (!(k > 0.0)) fail(ErrorCode::domain, "dual profile needs k > 0");
    const int n = rd.pb.d + 1;
    ExpProfile out(2 * n);
    for (int p = 1; p <= rd.pb.d + 1; ++p) {
        cplx sh = rd.sigma.apply(rd.ops.H * rd.modes.R(Branch::plus, p));
        out.add(sh * rd.modes.L(Branch::plus, p).conjugate(),
                -k * rd.modes.mode(Branch::plus, p).beta);
    }
    return out;
}

ExpProfile dual_profile_packaged(const RootData& rd, const KernelConstants& kc, double k,
                                 double sign_omega2) {
    if (!(k > 0.0)) fail(ErrorCode::domain, "dual profile needs k > 0");
    const int n = rd.pb.d + 1;
    CVector zero = CVector::Zero(n);
    const ModeSet& m = rd.modes;
    ExpProfile out(2 * n);
    out.add(join(kc.omega1 / rd.gamma1 * kc.ltilde1, zero), -k * m.mode(Branch::plus, 1).beta);
    out.add(join(kc.omega3 / rd.gamma1 * kc.ltilde3, zero), -k * m.mode(Branch::plus, 3).beta);
    out.add(join(zero, sign_omega2 * kc.omega2 / rd.gamma2 * kc.ltilde2),
            -k * m.mode(Branch::plus, 2).beta);
    return out;
}

std::array<cplx, 5> q_oracle(const RootData& rd, double k, double kp) {
    if (k == 0.0 || kp == 0.0) fail(ErrorCode::domain, "q oracle needs k != 0 and k' != 0");
    if (!(k + kp > 0.0)) fail(ErrorCode::domain, "q oracle needs k + k' > 0");
    Ctx c(rd);
    const int n = c.n;
    const RVector& et = rd.eta.eta_t;
    const double mu = c.pb.mu;

    TraceProfiles tk = trace_profiles(rd, k);
    TraceProfiles tkp = trace_profiles(rd, kp);
    const SigmaData& s = rd.sigma;

    std::array<cplx, 5> q{};
    q[0] = s.apply(augmented_flux_differential(c.R, mu, rd.eta, tk.trace_right + tkp.trace_right) -
                   augmented_flux_differential(c.L, mu, rd.eta, tk.trace_left + tkp.trace_left));

    auto d2n = [&](const FluidState& st, const CVector& x, const CVector& y) {
        return second_differential(st, SecondDifferential::normal_augmented, et, x, y);
    };
    auto d2t = [&](const FluidState& st, const CVector& x, const CVector& y) {
        return second_differential(st, SecondDifferential::tangential_sum, et, x, y);
    };
    q[1] = -s.apply(d2n(c.R, tk.trace_right, tkp.trace_right) -
                    d2n(c.L, tk.trace_left, tkp.trace_left));

    ExpProfile dual = dual_profile(rd, k + kp);

    ExpProfile p3 = ExpProfile::pair(
        tk.profile, tkp.profile,
        [&](const CVector& a, cplx, const CVector& b, cplx) {
            return join(d2t(c.L, a.head(n), b.head(n)), d2t(c.R, a.tail(n), b.tail(n)));
        },
        2 * n);
    q[2] = I * (k + kp) * contract_integral(dual, p3);

    // z-derivative of the folded normal second differential, first d+1 rows
    ExpProfile p4 = ExpProfile::pair(
        tk.profile, tkp.profile,
        [&](const CVector& a, cplx la, const CVector& b, cplx lb) {
            CVector l = d2n(c.L, a.head(n), b.head(n)).head(n);
            CVector r = d2n(c.R, a.tail(n), b.tail(n)).head(n);
            return CVector((la + lb) * join(-l, r));
        },
        2 * n);
    q[3] = contract_integral(dual, p4);

    CMatrix A = CMatrix::Zero(2 * n, 2 * n);
    A.topLeftCorner(n, n) = -tangential_symbol(c.L, rd.eta);
    A.bottomRightCorner(n, n) = tangential_symbol(c.R, rd.eta);
    auto apply_A = [&](const CVector& a, cplx la) -> CVector { return la * (A * a); };
    ExpProfile p5 = tk.profile.map(apply_A, 2 * n) + tkp.profile.map(apply_A, 2 * n);
    q[4] = -contract_integral(dual, p5);
    return q;
}

KernelConstants kernel_constants(const RootData& rd) {
    Ctx c(rd);
    const FluidState& L = c.L;
    const FluidState& R = c.R;
    const double e0 = c.e0, aL = c.aL, aR = c.aR, n2 = c.n2, P = c.P, PL = c.PL;
    const double jr = c.pb.jump_rho, ju = c.pb.jump_u, U = c.upsilon;
    const ModeSet& m = rd.modes;
    const cplx b1m = m.mode(Branch::minus, 1).beta, b2m = m.mode(Branch::minus, 2).beta;
    const cplx b1p = m.mode(Branch::plus, 1).beta, b2p = m.mode(Branch::plus, 2).beta;
    const cplx g1 = rd.gamma1, g2 = rd.gamma2;

    KernelConstants kc;
    kc.alpha0 = alpha0(rd, AlphaMethod::closed).real();
    kc.Q = 2.0 * jr * ju * U * P * (b1m + b2m) * I * L.u * R.u * aL * aR *
           (L.u * aR + I * R.c2 * e0) / (L.u * aR - I * R.c2 * e0);
    kc.Q_l = jr * ju * U * L.u * R.u * aR / aL * P * PL * g1 * (I * e0 - L.u * b1m);
    kc.Q_r = jr * ju * U * L.u * R.u * aL / aR * P * P * g2 * (I * e0 + R.u * b2m);
    kc.Q_sharp = 2.0 * jr * U * P * (e0 * e0 + L.u * R.u * n2) * I * L.c2 * R.c2 * e0 *
                 (R.c2 * g2 / (R.rho * R.u) - L.c2 * g1 / (L.rho * L.u));
    kc.Q_b = -2.0 * jr * ju * U * P * L.u * R.u * n2 *
             (L.c2 * L.c2 * aR / (L.rho * aL) * std::conj(g1) * (I * e0 - L.u * b1p) +
              R.c2 * R.c2 * aL / (R.rho * aR) * std::conj(g2) * (I * e0 + R.u * b2p));
    kc.Q_nat = (L.pp / 2.0 + L.c2 / L.rho) * kc.Q_l + (R.pp / 2.0 + R.c2 / R.rho) * kc.Q_r +
               kc.Q_sharp;

    kc.omega1 = jr * ju * U * P / PL * I * L.u * e0 * (R.u * aR - I * R.c2 * e0);
    kc.omega2 = jr * ju * U * I * R.u * e0 * (L.u * aL - I * L.c2 * e0);
    kc.omega3 = jr * ju * ju * U * (e0 * e0 - L.u * R.u * n2) / PL * (R.u * aR - I * R.c2 * e0);

    const int n = c.n;
    const CVector et = rd.eta.eta_t.cast<cplx>();
    kc.ltilde1 = CVector(n);
    kc.ltilde1 << I * e0 - 2.0 * L.u * b1p, -I * et, b1p;
    kc.ltilde2 = CVector(n);
    kc.ltilde2 << -I * e0 - 2.0 * R.u * b2p, I * et, b2p;
    kc.ltilde3 = CVector(n);
    kc.ltilde3 << -L.u * L.u * n2, e0 * et, L.u * n2;
    return kc;
}

cplx kernel_closed_form(const RootData& rd, const KernelConstants& kc, double k, double kp) {
    const FluidState& L = rd.pb.left;
    const FluidState& R = rd.pb.right;
    if (k > 0.0 && kp > 0.0) return kc.Q_nat;
    if (k > 0.0 && kp < 0.0 && k + kp > 0.0) {
        cplx mixed = (L.pp / 2.0 - L.c2 / L.rho) * std::conj(kc.Q_l) +
                     (R.pp / 2.0 - R.c2 / R.rho) * std::conj(kc.Q_r) + kc.Q_b + std::conj(kc.Q);
        return mixed * (1.0 + kp / k);
    }
    fail(ErrorCode::domain, "closed form is given only for k, k' > 0 and k > 0 > k', k + k' > 0");
}

cplx Kernel::eval(double k, double kp) const {
    if (k == 0.0 && kp == 0.0) fail(ErrorCode::domain, "kernel undefined at (0, 0)");
    if (k + kp == 0.0) return 0.0;
    if (k + kp < 0.0) return std::conj(eval(-k, -kp));
    if (k <= 0.0) return eval(kp, k);
    // k > 0 from here, k + kp > 0
    if (kp > 0.0) return kc_.Q_nat;
    if (kp == 0.0) return kc_.Q_nat.real();
    return std::conj(kc_.Q_nat) * (1.0 + kp / k);
}

cplx Kernel::a1(double k, double kp) const { return eval(k, kp) / (4.0 * std::numbers::pi); }

cplx Kernel::limit_from_above(double k) const {
    if (!(k > 0.0)) fail(ErrorCode::domain, "one-sided limits need k > 0");
    return kc_.Q_nat;
}

cplx Kernel::limit_from_below(double k) const {
    if (!(k > 0.0)) fail(ErrorCode::domain, "one-sided limits need k > 0");
    return std::conj(kc_.Q_nat);
}

double Kernel::hunter_residual() const {
    return std::abs(limit_from_above(1.0) - std::conj(limit_from_below(1.0)));
}

cplx kernel_eval(const Kernel& kernel, double k, double kp) { return kernel.eval(k, kp); }

OracleReport oracle_vs_closed(const RootData& rd,
                              const std::vector<std::pair<double, double>>& samples) {
    KernelConstants kc = kernel_constants(rd);
    Kernel K(kc);
    OracleReport rep;
    for (auto [k, kp] : samples) {
        OracleSample s;
        s.k = k;
        s.kp = kp;
        auto q = q_oracle(rd, k, kp);
        for (const auto& v : q) s.oracle += v;
        s.closed = kernel_closed_form(rd, kc, k, kp);
        s.kernel = K.eval(k, kp);
        double scale = std::abs(kc.Q_nat);
        s.rel_dev = std::abs(s.oracle - s.closed) / scale;
        rep.max_rel_dev = std::max(rep.max_rel_dev, s.rel_dev);
        rep.max_rel_dev_kernel = std::max(rep.max_rel_dev_kernel, std::abs(s.oracle - s.kernel) / scale);
        rep.samples.push_back(s);
    }
    bool have_pos = false, have_mix = false;
    cplx ref_pos, ref_mix;
    const double scale = std::abs(kc.Q_nat);
    for (const auto& s : rep.samples) {
        if (s.k > 0.0 && s.kp > 0.0) {
            if (!have_pos) ref_pos = s.oracle, have_pos = true;
            rep.positive_spread = std::max(rep.positive_spread, std::abs(s.oracle - ref_pos) / scale);
        } else {
            cplx v = s.oracle / (1.0 + s.kp / s.k);
            if (!have_mix) ref_mix = v, have_mix = true;
            rep.mixed_spread = std::max(rep.mixed_spread, std::abs(v - ref_mix) / scale);
        }
    }
    return rep;
}

std::vector<std::pair<double, double>> default_kernel_samples(int per_region) {
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < per_region; ++i) {
        double t = per_region > 1 ? double(i) / (per_region - 1) : 0.5;
        double k = std::pow(10.0, -1.0 + 2.0 * t);
        double kp = std::pow(10.0, 1.0 - 2.0 * std::fmod(0.618033988749895 * (i + 1), 1.0));
        out.emplace_back(k, kp);
    }
    for (int i = 0; i < per_region; ++i) {
        double t = per_region > 1 ? double(i) / (per_region - 1) : 0.5;
        double k = std::pow(10.0, -0.5 + 1.5 * t);
        double f = 0.05 + 0.9 * std::fmod(0.618033988749895 * (i + 1), 1.0);
        out.emplace_back(k, -f * k);
    }
    return out;
}

ResidualList kernel_identities(const RootData& rd, const KernelConstants& kc) {
    Ctx c(rd);
    const FluidState& L = c.L;
    const FluidState& R = c.R;
    const double e0 = c.e0, aL = c.aL, aR = c.aR, n2 = c.n2, P = c.P;
    const double jr = c.pb.jump_rho, ju = c.pb.jump_u, U = c.upsilon;
    const ModeSet& m = rd.modes;
    const SigmaData& s = rd.sigma;
    const CMatrix& H = rd.ops.H;
    const DComponents& D = s.D;
    const cplx g1 = rd.gamma1, g2 = rd.gamma2;
    const int d = c.d;
    ResidualList out;

    // alpha0
    cplx a_closed = alpha0(rd, AlphaMethod::closed);
    cplx a_abs = alpha0(rd, AlphaMethod::abstract_sum);
    cplx a_fd = alpha0(rd, AlphaMethod::fd_delta);
    out.push_back({"alpha0-closed-vs-abstract", rel_diff(a_closed, a_abs), 1e-10});
    out.push_back({"alpha0-closed-vs-fd", rel_diff(a_closed, a_fd), 1e-6});
    out.push_back({"alpha0-imaginary", std::abs(a_abs.imag()) / std::abs(a_abs), 1e-12});
    out.push_back({"alpha0-nonzero", a_closed == 0.0 ? 1.0 : 0.0, 0.5});

    // products used for alpha0
    cplx e20 = I * s.apply(H * m.R(Branch::plus, 2));
    cplx e22 = I * s.apply(H * m.R(Branch::plus, 1));
    cplx e25 = s.apply(H * m.R(Branch::plus, 3));
    out.push_back({"sigma-HR2plus", rel_diff(e20, 2.0 * ju * U * R.c2 * aR * P * (R.u * aL - I * L.c2 * e0)), 1e-10});
    out.push_back({"sigma-HR2plus-D-form",
                   rel_diff(e20, 2.0 * U * R.c2 * (e0 * (D.Dd1 + R.u * D.Dd2) - R.u * n2 * D.Dt)), 1e-10});
    out.push_back({"sigma-HR1plus", rel_diff(e22, -2.0 * ju * U * L.c2 * aL * P * (L.u * aR - I * R.c2 * e0)), 1e-10});
    out.push_back({"sigma-HR3plus",
                   rel_diff(e25, -ju * ju * U * L.u * n2 / e0 * (e0 * e0 - L.u * R.u * n2) *
                                     (aR * (R.u * aL - I * L.c2 * e0) + aL * (L.u * aR - I * R.c2 * e0))),
                   1e-10});
    out.push_back({"sigma-HR3plus-D-form",
                   rel_diff(e25, -ju * U * L.u * n2 * (2.0 * D.Dd1 + (L.u + R.u) * D.Dd2)), 1e-10});
    for (int p = 4; p <= d + 1; ++p) {
        CVector hr = H * m.R(Branch::plus, p);
        out.push_back({"sigma-HR" + std::to_string(p) + "plus-vanishes",
                       std::abs(s.apply(hr)) / (s.star.norm() * hr.norm()), 1e-10});
    }

    // orthogonalities (L_p^+)^* R_q^-
    auto orth = [&](int p, int q) {
        CVector l = m.L(Branch::plus, p), r = m.R(Branch::minus, q);
        return std::abs(l.dot(r)) / (l.norm() * r.norm());
    };
    for (int p = 4; p <= d + 1; ++p)
        for (int q = 1; q <= 2; ++q)
            out.push_back({"orthogonality-L" + std::to_string(p) + "plus-R" + std::to_string(q) + "minus",
                           orth(p, q), 1e-10});
    out.push_back({"orthogonality-L1plus-R2minus", orth(1, 2), 1e-10});
    out.push_back({"orthogonality-L3plus-R2minus", orth(3, 2), 1e-10});
    out.push_back({"orthogonality-L2plus-R1minus", orth(2, 1), 1e-10});

    // packaged dual profile and omega extraction
    for (double z : {0.0, 0.5, 2.0}) {
        ExpProfile sum = dual_profile(rd, 1.0);
        CVector ref = sum.eval(z);
        double dev = (dual_profile_packaged(rd, kc, 1.0, 1.0).eval(z) - ref).norm() / ref.norm();
        double dev_variant = (dual_profile_packaged(rd, kc, 1.0, -1.0).eval(z) - ref).norm() / ref.norm();
        std::string tag = std::to_string(z).substr(0, 3);
        out.push_back({"dual-profile-packaged-z" + tag, dev, 1e-10});
        out.push_back({"dual-profile-packaged-variant-z" + tag, dev_variant, 0.0, true});
    }
    auto extract = [&](int p, const CVector& lt, cplx gamma) {
        cplx sh = s.apply(H * m.R(Branch::plus, p));
        CVector row = sh * m.mode(Branch::plus, p).l.conjugate();
        Eigen::Index i = 0;
        lt.cwiseAbs().maxCoeff(&i);
        return gamma * row(i) / lt(i);
    };
    out.push_back({"omega1-extraction", rel_diff(extract(1, kc.ltilde1, g1), kc.omega1), 1e-10});
    out.push_back({"omega2-extraction", rel_diff(extract(2, kc.ltilde2, g2), kc.omega2), 1e-10});
    out.push_back({"omega3-extraction", rel_diff(extract(3, kc.ltilde3, g1), kc.omega3), 1e-10});

    // conjugation relations between gamma and omega
    RMatrix AdL = flux_jacobians(L, d).back(), AdR = flux_jacobians(R, d).back();
    const CVector& r1m = m.mode(Branch::minus, 1).r;
    const CVector& r1p = m.mode(Branch::plus, 1).r;
    const CVector& r2m = m.mode(Branch::minus, 2).r;
    const CVector& r2p = m.mode(Branch::plus, 2).r;
    CMatrix AL = AdL.cast<cplx>(), AR = AdR.cast<cplx>();
    out.push_back({"gamma-conjugates", rel_diff(std::conj(g1) / g1, -std::conj(g2) / g2), 1e-10});
    out.push_back({"gamma-conjugate-ratio",
                   rel_diff(std::conj(g1) / g1, -(L.u * aR - I * R.c2 * e0) / (L.u * aR + I * R.c2 * e0)),
                   1e-10});
    cplx w1 = kc.omega1 * bdot(kc.ltilde1, AL * r1p);
    cplx w2 = kc.omega2 * bdot(kc.ltilde2, AR * r2p);
    out.push_back({"omega-products", rel_diff(w1, -w2), 1e-10});
    out.push_back({"omega-product-value",
                   rel_diff(w1, 2.0 * jr * ju * U * P * L.u * R.u * aL * aR), 1e-10});
    auto ortho_l = [&](const CVector& lt, const CMatrix& A, const CVector& r) {
        return std::abs(bdot(lt, A * r)) / (lt.norm() * A.norm() * r.norm());
    };
    out.push_back({"ltilde1-Ad-r1minus", ortho_l(kc.ltilde1, AL, r1m), 1e-12});
    out.push_back({"ltilde3-Ad-r1minus", ortho_l(kc.ltilde3, AL, r1m), 1e-12});
    out.push_back({"ltilde3-Ad-r1plus", ortho_l(kc.ltilde3, AL, r1p), 1e-12});
    out.push_back({"ltilde3-Adr-r2minus-variant", ortho_l(kc.ltilde3, AR, r2m), 0.0, true});

    // final simplification and B identity
    cplx lhs = L.c2 / L.rho * kc.Q_l + R.c2 / R.rho * kc.Q_r + 0.5 * kc.Q_sharp;
    cplx rhs = 0.5 * (kc.Q + std::conj(kc.Q_b));
    out.push_back({"final-simplification", std::abs(lhs - rhs) / std::abs(kc.Q_nat), 1e-10});

    const double jj = c.pb.j;
    const cplx b1m = m.mode(Branch::minus, 1).beta, b2m = m.mode(Branch::minus, 2).beta;
    const cplx ratio = (L.u * aR + I * R.c2 * e0) / (L.u * aR - I * R.c2 * e0);
    const double tail = (e0 * e0 + L.u * R.u * n2) / (jj * ju * e0);
    cplx Bl = b1m * ratio - I * g1 / L.rho * (I * e0 - L.u * b1m) - tail * L.c2 * g1;
    cplx Br = b2m * ratio - I * g2 / R.rho * (I * e0 + R.u * b2m) + tail * R.c2 * g2;
    cplx Br_variant = b2m * ratio - I * g2 / R.rho * (I * e0 + L.u * b2m) + tail * R.c2 * g2;
    out.push_back({"B-identity", std::abs(Bl + Br) / (std::abs(Bl) + std::abs(Br)), 1e-12});
    out.push_back({"B-identity-variant",
                   std::abs(Bl + Br_variant) / (std::abs(Bl) + std::abs(Br_variant)), 0.0, true});
    out.push_back({"B-left-value",
                   rel_diff(L.u * (R.u * aL - I * L.c2 * e0) * Bl, -I * e0 * (L.u * aL + I * L.c2 * e0)),
                   1e-10});
    out.push_back({"B-right-value",
                   rel_diff(R.u * (L.u * aR - I * R.c2 * e0) * Br, -I * e0 * (R.u * aR + I * R.c2 * e0)),
                   1e-10});

    // Hunter condition
    Kernel K(kc);
    out.push_back({"hunter-closed", K.hunter_residual(), 0.0});
    auto qsum = [&](double k, double kp) {
        cplx t = 0.0;
        for (const auto& v : q_oracle(rd, k, kp)) t += v;
        return t;
    };
    double scale = std::abs(kc.Q_nat);
    out.push_back({"hunter-oracle-above", std::abs(qsum(1.0, 1e-6) - kc.Q_nat) / scale, 1e-4});
    out.push_back({"hunter-oracle-below", std::abs(qsum(1.0, -1e-6) - std::conj(kc.Q_nat)) / scale, 1e-4});

    // conjugation pattern of the individual kernels
    auto q21 = q_oracle(rd, 2.0, 1.0);
    out.push_back({"q1-vanishes-positive-region", std::abs(q21[0]) / scale, 1e-10});
    auto qm = q_oracle(rd, 2.0, -1.0);
    double qs = std::abs(kc.Q);
    out.push_back({"q1-mixed-equals-conjQ", std::abs(qm[0] - std::conj(kc.Q)) / qs, 1e-10});
    out.push_back({"q5-mixed-equals-conjQ-ratio", std::abs(qm[4] - std::conj(kc.Q) * (-0.5)) / qs, 1e-10});
    out.push_back({"q5-mixed-equals-Q-ratio-variant", std::abs(qm[4] - kc.Q * (-0.5)) / qs, 0.0, true});
    auto q31 = q_oracle(rd, 3.0, -1.0);
    out.push_back({"q1-plus-q5-sum", std::abs(q31[0] + q31[4] - std::conj(kc.Q) * (2.0 / 3.0)) / qs,
                   1e-10});
    return out;
}

}  // namespace phasewave

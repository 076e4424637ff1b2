#include "doctest.h"
#include "support.hpp"

#include "phasewave/error.hpp"

using namespace phasewave;
using pwtest::StateGen;

TEST_CASE("raw and closed determinants agree on scans") {
    StateGen gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + trial % 2;
        PhaseBoundary pb = gen.boundary(d);
        RVector et = gen.tangent(d);
        double emax = elliptic_limit(pb, et);
        for (int i = 0; i < 50; ++i) {
            Frequency f{emax * (-0.98 + 1.96 * i / 49.0), et};
            cplx raw = lopatinskii_det(pb, f, DetMethod::raw);
            cplx closed = lopatinskii_det(pb, f, DetMethod::closed);
            CHECK(std::abs(raw - closed) <= 1e-10 * lopatinskii_scale(pb, f));
        }
    }
}

TEST_CASE("fixture determinant at eta0 = 1") {
    PhaseBoundary pb = pwtest::fixture_a();
    Frequency f{1.0, pwtest::unit_tangent(2)};
    cplx raw = lopatinskii_det(pb, f, DetMethod::raw);
    cplx closed = lopatinskii_det(pb, f, DetMethod::closed);
    CHECK(std::abs(raw - closed) < 1e-10 * std::abs(raw));
    CHECK(std::abs(closed.imag()) == 0.0);
}

TEST_CASE("closed determinant factors through F") {
    StateGen gen(22);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 2;
        PhaseBoundary pb = gen.boundary(d);
        Frequency f = gen.frequency(pb);
        double F = root_function(pb, f.eta_t, f.eta0);
        cplx delta = lopatinskii_det(pb, f, DetMethod::closed);
        TangentFrame tf = tangent_frame(f.eta_t, pb.right.u, f.eta0);
        double P = f.eta0 * f.eta0 + pb.right.u * pb.right.u * f.tangential_norm_sq();
        cplx expect = -pb.jump_rho * pb.jump_u * tf.upsilon * P * F;
        CHECK(std::abs(delta - expect) <= 1e-12 * std::abs(expect) + 1e-300);
    }
}

TEST_CASE("sigma by minors and by closed form") {
    StateGen gen(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 2;
        PhaseBoundary pb = gen.boundary(d);
        RootData rd = find_root(pb, gen.tangent(d));
        SigmaData a = sigma_vector(pb, rd.eta, SigmaMethod::minors);
        SigmaData b = sigma_vector(pb, rd.eta, SigmaMethod::closed);
        double scale = b.star.cwiseAbs().maxCoeff();
        CHECK((a.star - b.star).cwiseAbs().maxCoeff() <= 1e-10 * scale);
        CHECK(std::abs(a.apply(rd.ops.Jeta)) <= 1e-10 * scale * rd.ops.Jeta.norm());
    }
}

TEST_CASE("fixture root") {
    PhaseBoundary pb = pwtest::fixture_a();
    RVector et = pwtest::unit_tangent(2);
    RootData rd = find_root(pb, et);
    const double e0 = rd.eta.eta0;
    CHECK(e0 > 0.0);
    CHECK(e0 < 1.786);
    CHECK(rd.sign_changes == 1);
    double h = 1e-6 * e0;
    cplx dd = (lopatinskii_det(pb, {e0 + h, et}, DetMethod::closed) -
               lopatinskii_det(pb, {e0 - h, et}, DetMethod::closed)) / (2 * h);
    CHECK(std::abs(lopatinskii_det(pb, rd.eta, DetMethod::closed)) <= 1e-12 * std::abs(dd) * e0);
    CHECK(std::abs(root_function(pb, et, e0)) <= 1e-12 * std::abs(pb.left.c2 * pb.right.c2 * e0 * e0));
}

TEST_CASE("boundary coefficients solve the trace condition") {
    StateGen gen(24);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 2;
        PhaseBoundary pb = gen.boundary(d);
        RootData rd = find_root(pb, gen.tangent(d));
        CVector res = rd.ops.Jeta + rd.gamma1 * rd.ops.H * rd.modes.R(Branch::minus, 1) +
                      rd.gamma2 * rd.ops.H * rd.modes.R(Branch::minus, 2);
        CHECK(res.norm() <= 1e-10 * rd.ops.Jeta.norm());
        GammaData g = gamma_coefficients(pb, rd.eta);
        CHECK(std::abs(g.gamma1 - g.gamma1_alt) <= 1e-12 * std::abs(g.gamma1));
        CHECK(std::abs(g.gamma2 - g.gamma2_alt) <= 1e-12 * std::abs(g.gamma2));
    }
}

TEST_CASE("identity suite on the fixture and random states") {
    StateGen gen(25);
    std::vector<RootData> roots{find_root(pwtest::fixture_a(), pwtest::unit_tangent(2))};
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + trial % 2;
        roots.push_back(find_root(gen.boundary(d), gen.tangent(d)));
    }
    for (const auto& rd : roots)
        for (const auto& r : lopatinskii_identities(rd)) {
            INFO(r.name << " = " << r.value);
            CHECK(r.pass());
        }
}

TEST_CASE("root needs a tangential frequency") {
    PhaseBoundary pb = pwtest::fixture_a();
    CHECK_THROWS_AS(find_root(pb, RVector::Zero(1)), Error);
    CHECK_THROWS_AS(find_root(pb, RVector::Ones(2)), Error);
}

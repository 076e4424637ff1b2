#include <boost/math/quadrature/exp_sinh.hpp>

#include "doctest.h"

#include "phasewave/error.hpp"
#include "phasewave/exp_profile.hpp"

using namespace phasewave;

namespace {

ExpProfile sample_profile() {
    ExpProfile p(2);
    CVector a(2), b(2);
    a << cplx(1.0, 0.5), cplx(-0.3, 2.0);
    b << cplx(0.2, -1.0), cplx(0.7, 0.1);
    p.add(a, cplx(-0.8, 3.0));
    p.add(b, cplx(-2.5, -1.2));
    return p;
}

cplx quad(auto&& f) {
    boost::math::quadrature::exp_sinh<double> q;
    double re = q.integrate([&](double z) { return f(z).real(); }, 1e-13);
    double im = q.integrate([&](double z) { return f(z).imag(); }, 1e-13);
    return {re, im};
}

}  // namespace

TEST_CASE("exact integral agrees with adaptive quadrature") {
    ExpProfile p = sample_profile();
    CVector exact = p.integral();
    for (int i = 0; i < 2; ++i) {
        cplx num = quad([&](double z) { return p.eval(z)(i); });
        CHECK(std::abs(exact(i) - num) < 1e-10 * std::abs(exact(i)));
    }
}

TEST_CASE("contracted integral agrees with quadrature") {
    ExpProfile p = sample_profile();
    ExpProfile q = sample_profile().conj();
    cplx exact = contract_integral(p, q);
    cplx num = quad([&](double z) { return p.eval(z).cwiseProduct(q.eval(z)).sum(); });
    CHECK(std::abs(exact - num) < 1e-10 * std::abs(exact));
}

TEST_CASE("derivative and conjugate") {
    ExpProfile p = sample_profile();
    const double z = 0.37, h = 1e-6;
    CVector fd = (p.eval(z + h) - p.eval(z - h)) / (2 * h);
    CHECK((p.derivative().eval(z) - fd).norm() < 1e-8 * fd.norm());
    CHECK((p.conj().eval(z) - p.eval(z).conjugate()).norm() == 0.0);
    CHECK(((p + p).eval(z) - 2.0 * p.eval(z)).norm() < 1e-15);
}

TEST_CASE("growing terms are rejected unless their coefficient vanishes") {
    ExpProfile p(1);
    p.add(CVector::Zero(1), cplx(1.0, 0.0));
    CHECK(p.integral().norm() == 0.0);
    p.add(CVector::Ones(1), cplx(0.0, 2.0));
    CHECK_THROWS_AS(p.integral(), Error);
    ExpProfile bad(2);
    CHECK_THROWS_AS(bad.add(CVector::Ones(3), cplx(-1.0)), Error);
}

#include "phasewave/exp_profile.hpp"

#include <sstream>

#include "phasewave/error.hpp"

namespace phasewave {

void ExpProfile::add(const CVector& coeff, cplx lambda) {
    if (coeff.size() != m_) fail(ErrorCode::shape, "profile coefficient has the wrong length");
    terms_.push_back({coeff, lambda});
}

CVector ExpProfile::eval(double z) const {
    CVector v = CVector::Zero(m_);
    for (const auto& t : terms_) v += t.coeff * std::exp(t.lambda * z);
    return v;
}

ExpProfile ExpProfile::derivative() const {
    return map([](const CVector& c, cplx l) -> CVector { return l * c; }, m_);
}

ExpProfile ExpProfile::conj() const {
    ExpProfile out(m_);
    for (const auto& t : terms_) out.add(t.coeff.conjugate(), std::conj(t.lambda));
    return out;
}

CVector ExpProfile::integral() const {
    CVector v = CVector::Zero(m_);
    for (const auto& t : terms_) {
        if (t.coeff.isZero(0.0)) continue;
        if (!(t.lambda.real() < 0.0)) {
            std::ostringstream msg;
            msg << "non-decaying exponent " << t.lambda.real() << (t.lambda.imag() < 0 ? "" : "+")
                << t.lambda.imag() << "i in an integrated profile";
            fail(ErrorCode::integration_domain, msg.str());
        }
        v -= t.coeff / t.lambda;
    }
    return v;
}

ExpProfile ExpProfile::operator+(const ExpProfile& other) const {
    if (other.m_ != m_) fail(ErrorCode::shape, "profile lengths differ");
    ExpProfile out = *this;
    for (const auto& t : other.terms_) out.terms_.push_back(t);
    return out;
}

ExpProfile contract(const ExpProfile& row, const ExpProfile& vec) {
    if (row.size() != vec.size()) fail(ErrorCode::shape, "profile lengths differ");
    return ExpProfile::pair(
        row, vec,
        [](const CVector& a, cplx, const CVector& b, cplx) {
            CVector s(1);
            s(0) = a.cwiseProduct(b).sum();
            return s;
        },
        1);
}

cplx contract_integral(const ExpProfile& row, const ExpProfile& vec) {
    return contract(row, vec).integral()(0);
}

}  // namespace phasewave

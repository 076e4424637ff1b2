#pragma once

#include <vector>

#include "phasewave/types.hpp"

namespace phasewave {

struct ExpTerm {
    CVector coeff;
    cplx lambda;
};

// P(z) = sum_t coeff_t exp(lambda_t z) on z in [0, inf).
class ExpProfile {
public:
    ExpProfile() = default;
    explicit ExpProfile(int m) : m_(m) {}

    int size() const { return m_; }
    const std::vector<ExpTerm>& terms() const { return terms_; }
    void add(const CVector& coeff, cplx lambda);

    CVector eval(double z) const;
    ExpProfile derivative() const;
    ExpProfile conj() const;
    // Exact integral over [0, inf); every term with a nonzero coefficient needs Re(lambda) < 0.
    CVector integral() const;

    ExpProfile operator+(const ExpProfile& other) const;

    // f(coeff, lambda) -> coefficient of length m_out; exponents unchanged.
    template <class F>
    ExpProfile map(F&& f, int m_out) const {
        ExpProfile out(m_out);
        for (const auto& t : terms_) out.add(f(t.coeff, t.lambda), t.lambda);
        return out;
    }

    // Term-by-term product, exponents add: f(ca, la, cb, lb) -> coefficient of length m_out.
    template <class F>
    static ExpProfile pair(const ExpProfile& a, const ExpProfile& b, F&& f, int m_out) {
        ExpProfile out(m_out);
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_)
                out.add(f(ta.coeff, ta.lambda, tb.coeff, tb.lambda), ta.lambda + tb.lambda);
        return out;
    }

private:
    int m_ = 0;
    std::vector<ExpTerm> terms_;
};

// Unconjugated contraction row(z) . vec(z), a scalar profile.
ExpProfile contract(const ExpProfile& row, const ExpProfile& vec);
cplx contract_integral(const ExpProfile& row, const ExpProfile& vec);

}  // namespace phasewave

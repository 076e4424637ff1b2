#pragma once

#include <algorithm>
#include <complex>

#include <Eigen/Dense>

namespace phasewave {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr cplx I{0.0, 1.0};

}  // namespace phasewave

#include <string>
#include <vector>

namespace phasewave {

// A named check: value is compared against tol; informational entries never fail.
struct Residual {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool informational = false;

    bool pass() const { return informational || (value <= tol); }
};

using ResidualList = std::vector<Residual>;

inline double rel_diff(cplx a, cplx b) {
    double m = std::max(std::abs(a), std::abs(b));
    return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

}  // namespace phasewave

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phasewave/kernel.hpp"

namespace phasewave {

// Truncated spectrum w^(k_n), n = -N..N, k_n = n dk; stored at index n + N.
struct SpectralField {
    double dk = 0.0;
    int N = 0;
    std::vector<cplx> what;

    SpectralField() = default;
    SpectralField(double dk_, int N_) : dk(dk_), N(N_), what(2 * N_ + 1, cplx(0.0)) {}

    double k(int n) const { return n * dk; }
    cplx& at(int n) { return what[n + N]; }
    const cplx& at(int n) const { return what[n + N]; }
};

struct InitProfile {
    std::string name = "gaussian_bump";
    double amplitude = 1.0;
    double k0 = 1.0;
    double width = 0.5;
    std::uint64_t seed = 0;
};

struct SimConfig {
    double dk = 0.1;
    int N = 64;
    double dt = 0.01;
    double T = 1.0;
    InitProfile init;
    int output_every = 10;
    double blowup_factor = 1e6;
    bool snapshots = false;
    bool physical = false;
    bool order_check = false;

    void validate() const;
};

SpectralField init_field(const SimConfig& config);

void hermitian_symmetrize(SpectralField& f);
double hermitian_deviation(const SpectralField& f);

// Precomputed coefficients -(i k_n / alpha0) a1(k_n - k_m, k_m) dk for the discrete convolution.
class ConvolutionTable {
public:
    ConvolutionTable(const Kernel& kernel, double alpha0, double dk, int N);

    double dk() const { return dk_; }
    int N() const { return N_; }
    SpectralField rhs(const SpectralField& f) const;

private:
    double dk_;
    int N_;
    std::vector<cplx> c_;  // (2N+1)^2, row n, column m
};

SpectralField convolution_rhs(const SpectralField& f, const Kernel& kernel, double alpha0);

SpectralField rk4_step(const SpectralField& f, const ConvolutionTable& table, double dt);
SpectralField rk4_step(const SpectralField& f, const Kernel& kernel, double alpha0, double dt);

struct Diagnostics {
    double tau = 0.0;
    cplx mean;
    double l2 = 0.0;
    double h2 = 0.0;
    double max_abs = 0.0;
};

Diagnostics diagnostics(const SpectralField& f, double tau);

// Integrates to T with steps dt (last step shortened if needed).
SpectralField integrate(const SpectralField& f0, const ConvolutionTable& table, double dt, double T);

struct ConvergenceReport {
    double diff_coarse = 0.0;  // |w_dt - w_dt/2|
    double diff_fine = 0.0;    // |w_dt/2 - w_dt/4|
    double ratio = 0.0;
    double order = 0.0;
};

ConvergenceReport self_convergence(const SpectralField& f0, const ConvolutionTable& table, double dt,
                                   double T);

struct PhysicalSample {
    double x = 0.0;
    double w = 0.0;
};

// Direct inverse transform on 2N+1 points over one period 2 pi / dk.
std::vector<PhysicalSample> physical_space(const SpectralField& f);

struct SimulationResult {
    double eta0 = 0.0;
    double alpha0 = 0.0;
    std::vector<Diagnostics> diag;
    std::vector<std::pair<double, SpectralField>> snapshots;
    bool blowup = false;
    double breaking_time = 0.0;
    long steps = 0;
    SpectralField final_field;
};

SimulationResult run_simulation(const PhaseBoundary& pb, const RVector& eta_t, const SimConfig& config);
SimulationResult run_simulation(const Kernel& kernel, double alpha0, const SimConfig& config);

}  // namespace phasewave

#include "phasewave/amplitude.hpp"

#include <cmath>
#include <random>

#include "phasewave/error.hpp"

namespace phasewave {

void SimConfig::validate() const {
    if (!(dk > 0.0 && std::isfinite(dk))) fail(ErrorCode::config, "sim.dk must be positive");
    if (N < 8) fail(ErrorCode::config, "sim.N must be at least 8");
    if (!(dt > 0.0 && std::isfinite(dt))) fail(ErrorCode::config, "sim.dt must be positive");
    if (!(T > 0.0 && std::isfinite(T))) fail(ErrorCode::config, "sim.T must be positive");
    if (output_every < 1) fail(ErrorCode::config, "sim.output_every must be at least 1");
    if (!(blowup_factor > 1.0)) fail(ErrorCode::config, "sim.blowup_factor must exceed 1");
    if (!std::isfinite(init.amplitude) || !std::isfinite(init.k0) || !std::isfinite(init.width))
        fail(ErrorCode::config, "sim.init parameters must be finite");
}

SpectralField init_field(const SimConfig& cfg) {
    cfg.validate();
    SpectralField f(cfg.dk, cfg.N);
    const InitProfile& p = cfg.init;
    const double A = p.amplitude;
    if (p.name == "gaussian_bump") {
        if (!(p.width > 0.0)) fail(ErrorCode::config, "gaussian_bump needs width > 0");
        for (int n = -f.N; n <= f.N; ++n) {
            double x = (std::abs(f.k(n)) - p.k0) / p.width;
            f.at(n) = A * std::exp(-x * x);
        }
    } else if (p.name == "single_mode") {
        double pos = p.k0 / f.dk;
        long n0 = std::lround(pos);
        if (std::abs(pos - n0) > 1e-9 * std::max(1.0, std::abs(pos)) || n0 < 1 || n0 > f.N)
            fail(ErrorCode::config, "single_mode k0 must be a positive grid wavenumber");
        f.at(static_cast<int>(n0)) = A;
        f.at(-static_cast<int>(n0)) = std::conj(cplx(A));
    } else if (p.name == "random_smooth") {
        std::mt19937_64 gen(p.seed);
        auto uniform = [&gen]() {
            return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
        };
        f.at(0) = A * uniform();
        for (int n = 1; n <= f.N; ++n) {
            double re = uniform();
            double im = uniform();
            double decay = std::pow(1.0 + std::abs(f.k(n)), -4.0);
            f.at(n) = A * decay * cplx(re, im);
            f.at(-n) = std::conj(f.at(n));
        }
    } else {
        fail(ErrorCode::config, "unknown initial profile '" + p.name + "'");
    }
    hermitian_symmetrize(f);
    return f;
}

void hermitian_symmetrize(SpectralField& f) {
    f.at(0) = f.at(0).real();
    for (int n = 1; n <= f.N; ++n) {
        cplx v = 0.5 * (f.at(n) + std::conj(f.at(-n)));
        f.at(n) = v;
        f.at(-n) = std::conj(v);
    }
}

double hermitian_deviation(const SpectralField& f) {
    double dev = 0.0;
    for (int n = 0; n <= f.N; ++n) dev = std::max(dev, std::abs(f.at(-n) - std::conj(f.at(n))));
    return dev;
}

ConvolutionTable::ConvolutionTable(const Kernel& kernel, double alpha0, double dk, int N)
    : dk_(dk), N_(N), c_(static_cast<size_t>(2 * N + 1) * (2 * N + 1), cplx(0.0)) {
    if (alpha0 == 0.0) fail(ErrorCode::degeneracy, "alpha0 must be nonzero");
    const int W = 2 * N + 1;
    for (int n = -N; n <= N; ++n) {
        if (n == 0) continue;
        cplx pref = -I * (n * dk) / alpha0 * dk;
        for (int m = std::max(-N, n - N); m <= std::min(N, n + N); ++m)
            c_[static_cast<size_t>(n + N) * W + (m + N)] = pref * kernel.a1((n - m) * dk, m * dk);
    }
}

SpectralField ConvolutionTable::rhs(const SpectralField& f) const {
    if (f.N != N_ || f.dk != dk_) fail(ErrorCode::shape, "field grid does not match the table");
    const int N = N_;
    const int W = 2 * N + 1;
    SpectralField out(dk_, N);
    for (int n = -N; n <= N; ++n) {
        if (n == 0) continue;
        const cplx* row = &c_[static_cast<size_t>(n + N) * W];
        cplx acc = 0.0;
        for (int m = std::max(-N, n - N); m <= std::min(N, n + N); ++m)
            acc += row[m + N] * f.at(n - m) * f.at(m);
        out.at(n) = acc;
    }
    hermitian_symmetrize(out);
    return out;
}

SpectralField convolution_rhs(const SpectralField& f, const Kernel& kernel, double alpha0) {
    return ConvolutionTable(kernel, alpha0, f.dk, f.N).rhs(f);
}

namespace {

SpectralField axpy(const SpectralField& x, double a, const SpectralField& y) {
    SpectralField out = x;
    for (size_t i = 0; i < out.what.size(); ++i) out.what[i] += a * y.what[i];
    return out;
}

}  // namespace

SpectralField rk4_step(const SpectralField& f, const ConvolutionTable& table, double dt) {
    if (dt == 0.0) return f;
    SpectralField k1 = table.rhs(f);
    SpectralField k2 = table.rhs(axpy(f, 0.5 * dt, k1));
    SpectralField k3 = table.rhs(axpy(f, 0.5 * dt, k2));
    SpectralField k4 = table.rhs(axpy(f, dt, k3));
    SpectralField out = f;
    for (size_t i = 0; i < out.what.size(); ++i)
        out.what[i] += dt / 6.0 * (k1.what[i] + 2.0 * k2.what[i] + 2.0 * k3.what[i] + k4.what[i]);
    hermitian_symmetrize(out);
    return out;
}

SpectralField rk4_step(const SpectralField& f, const Kernel& kernel, double alpha0, double dt) {
    return rk4_step(f, ConvolutionTable(kernel, alpha0, f.dk, f.N), dt);
}

Diagnostics diagnostics(const SpectralField& f, double tau) {
    Diagnostics d;
    d.tau = tau;
    d.mean = f.at(0);
    for (int n = -f.N; n <= f.N; ++n) {
        double a2 = std::norm(f.at(n));
        double k = f.k(n);
        d.l2 += a2 * f.dk;
        d.h2 += k * k * k * k * a2 * f.dk;
        d.max_abs = std::max(d.max_abs, std::sqrt(a2));
    }
    return d;
}

namespace {

long step_count(double dt, double T) {
    double r = T / dt;
    long n = std::lround(r);
    if (std::abs(r - n) <= 1e-9 * std::max(1.0, r)) return std::max(n, 1L);
    return static_cast<long>(std::ceil(r));
}

double step_size(long i, long nsteps, double dt, double T) {
    return i + 1 < nsteps ? dt : T - dt * (nsteps - 1);
}

double field_distance(const SpectralField& a, const SpectralField& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.what.size(); ++i) s += std::norm(a.what[i] - b.what[i]);
    return std::sqrt(s * a.dk);
}

}  // namespace

SpectralField integrate(const SpectralField& f0, const ConvolutionTable& table, double dt, double T) {
    long nsteps = step_count(dt, T);
    SpectralField f = f0;
    for (long i = 0; i < nsteps; ++i) f = rk4_step(f, table, step_size(i, nsteps, dt, T));
    return f;
}

ConvergenceReport self_convergence(const SpectralField& f0, const ConvolutionTable& table, double dt,
                                   double T) {
    SpectralField a = integrate(f0, table, dt, T);
    SpectralField b = integrate(f0, table, dt / 2.0, T);
    SpectralField c = integrate(f0, table, dt / 4.0, T);
    ConvergenceReport r;
    r.diff_coarse = field_distance(a, b);
    r.diff_fine = field_distance(b, c);
    r.ratio = r.diff_fine > 0.0 ? r.diff_coarse / r.diff_fine : 0.0;
    r.order = r.ratio > 0.0 ? std::log2(r.ratio) : 0.0;
    return r;
}

std::vector<PhysicalSample> physical_space(const SpectralField& f) {
    const int M = 2 * f.N + 1;
    const double period = 2.0 * std::acos(-1.0) / f.dk;
    std::vector<PhysicalSample> out;
    out.reserve(M);
    for (int j = -f.N; j <= f.N; ++j) {
        double x = j * period / M;
        cplx w = 0.0;
        for (int n = -f.N; n <= f.N; ++n) w += f.at(n) * std::exp(I * (f.k(n) * x));
        out.push_back({x, (w * f.dk).real()});
    }
    return out;
}

SimulationResult run_simulation(const Kernel& kernel, double alpha0, const SimConfig& cfg) {
    cfg.validate();
    SimulationResult res;
    res.alpha0 = alpha0;
    ConvolutionTable table(kernel, alpha0, cfg.dk, cfg.N);
    SpectralField f = init_field(cfg);

    long nsteps = step_count(cfg.dt, cfg.T);
    double tau = 0.0;
    Diagnostics d0 = diagnostics(f, tau);
    res.diag.push_back(d0);
    if (cfg.snapshots) res.snapshots.emplace_back(tau, f);

    for (long i = 0; i < nsteps; ++i) {
        double h = step_size(i, nsteps, cfg.dt, cfg.T);
        f = rk4_step(f, table, h);
        tau = (i + 1 == nsteps) ? cfg.T : (i + 1) * cfg.dt;
        res.steps = i + 1;
        Diagnostics d = diagnostics(f, tau);
        bool finite = std::isfinite(d.h2) && std::isfinite(d.l2);
        bool blown = !finite || (d0.h2 > 0.0 && d.h2 > cfg.blowup_factor * d0.h2);
        bool emit = blown || (i + 1) % cfg.output_every == 0 || i + 1 == nsteps;
        if (emit) {
            res.diag.push_back(d);
            if (cfg.snapshots) res.snapshots.emplace_back(tau, f);
        }
        if (blown) {
            res.blowup = true;
            res.breaking_time = tau;
            break;
        }
    }
    res.final_field = f;
    return res;
}

SimulationResult run_simulation(const PhaseBoundary& pb, const RVector& eta_t, const SimConfig& cfg) {
    cfg.validate();
    RootData rd = find_root(pb, eta_t);
    KernelConstants kc = kernel_constants(rd);
    SimulationResult res = run_simulation(Kernel(kc), kc.alpha0, cfg);
    res.eta0 = rd.eta.eta0;
    return res;
}

}  // namespace phasewave

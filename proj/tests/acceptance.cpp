// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "support.hpp"

#include "phasewave/amplitude.hpp"
#include "phasewave/commands.hpp"
#include "phasewave/kernel.hpp"

using namespace phasewave;
using pwtest::StateGen;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct MaxTracker {
    std::map<std::string, double> worst;
    bool ok = true;
    void add(const std::string& key, double value, double tol) {
        double& w = worst[key];
        w = std::max(w, value);
        if (!(value <= tol)) ok = false;
    }
    void add(const Residual& r) { add(r.name, r.value, r.tol); }
    std::string summary(std::initializer_list<const char*> keys) const {
        std::string s;
        char buf[96];
        for (const char* k : keys) {
            auto it = worst.find(k);
            std::snprintf(buf, sizeof buf, "%s%s=%.1e", s.empty() ? "" : " ", k, it == worst.end() ? -1.0 : it->second);
            s += buf;
        }
        return s;
    }
};

std::vector<RootData> rooted(int n, std::uint64_t seed) {
    StateGen gen(seed);
    std::vector<RootData> out{find_root(pwtest::fixture_a(), pwtest::unit_tangent(2))};
    for (int i = 0; i < n; ++i) {
        const int d = 2 + i % 2;
        out.push_back(find_root(gen.boundary(d), gen.tangent(d)));
    }
    return out;
}

Outcome modes_criterion() {
    StateGen gen(1001);
    MaxTracker t;
    for (int i = 0; i < 1000; ++i) {
        const int d = 2 + i % 2;
        PhaseBoundary pb = gen.boundary(d);
        Frequency eta = gen.frequency(pb);
        for (const auto& r : mode_invariants(pb, eta))
            if (r.name == "eigenvector-right" || r.name == "eigenvector-left" || r.name == "dispersion" ||
                r.name == "conjugate-pairs-beta")
                t.add(r);
    }
    return {t.ok, t.summary({"eigenvector-right", "eigenvector-left", "dispersion", "conjugate-pairs-beta"})};
}

Outcome lopatinskii_criterion() {
    StateGen gen(1002);
    MaxTracker t;
    for (int i = 0; i < 20; ++i) {
        const int d = 2 + i % 2;
        PhaseBoundary pb = gen.boundary(d);
        RVector et = gen.tangent(d);
        double emax = elliptic_limit(pb, et);
        for (int s = 0; s < 100; ++s) {
            Frequency f{emax * (-0.99 + 1.98 * s / 99.0), et};
            cplx raw = lopatinskii_det(pb, f, DetMethod::raw);
            cplx closed = lopatinskii_det(pb, f, DetMethod::closed);
            t.add("det", std::abs(raw - closed) / lopatinskii_scale(pb, f), 1e-10);
        }
        RootData rd = find_root(pb, et);
        CVector a = sigma_vector(pb, rd.eta, SigmaMethod::minors).star;
        CVector b = sigma_vector(pb, rd.eta, SigmaMethod::closed).star;
        t.add("sigma", (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff(), 1e-10);
    }
    return {t.ok, t.summary({"det", "sigma"})};
}

Outcome root_criterion() {
    MaxTracker t;
    for (const auto& rd : rooted(20, 1003)) {
        const PhaseBoundary& pb = rd.pb;
        const double e0 = rd.eta.eta0, h = 1e-6 * e0;
        cplx dd = (lopatinskii_det(pb, {e0 + h, rd.eta.eta_t}, DetMethod::closed) -
                   lopatinskii_det(pb, {e0 - h, rd.eta.eta_t}, DetMethod::closed)) / (2 * h);
        t.add("delta", std::abs(lopatinskii_det(pb, rd.eta, DetMethod::closed)) / std::abs(e0 * dd), 1e-12);
        for (const auto& r : lopatinskii_identities(rd))
            if (r.name == "gamma-relation" || r.name == "gamma1-forms" || r.name == "gamma2-forms" ||
                r.name == "root-relation")
                t.add(r);
    }
    return {t.ok, t.summary({"delta", "gamma-relation", "gamma1-forms", "gamma2-forms", "root-relation"})};
}

Outcome alpha_criterion() {
    MaxTracker t;
    for (const auto& rd : rooted(20, 1004)) {
        cplx c = alpha0(rd, AlphaMethod::closed);
        cplx a = alpha0(rd, AlphaMethod::abstract_sum);
        cplx f = alpha0(rd, AlphaMethod::fd_delta);
        t.add("abstract", std::abs(c - a) / std::abs(c), 1e-10);
        t.add("fd", std::abs(c - f) / std::abs(c), 1e-6);
        t.add("imag", std::abs(a.imag()) / std::abs(a), 1e-12);
        t.add("nonzero", c.real() != 0.0 ? 0.0 : 1.0, 0.0);
    }
    return {t.ok, t.summary({"abstract", "fd", "imag"})};
}

Outcome kernel_criterion() {
    MaxTracker t;
    std::map<std::string, double> variants;
    const auto samples = default_kernel_samples(20);
    for (const auto& rd : rooted(10, 1005)) {
        OracleReport rep = oracle_vs_closed(rd, samples);
        t.add("oracle", rep.max_rel_dev, 1e-9);
        t.add("constancy", rep.positive_spread, 1e-10);
        t.add("proportionality", rep.mixed_spread, 1e-10);
        KernelConstants kc = kernel_constants(rd);
        for (const auto& r : lopatinskii_identities(rd))
            if (r.name.rfind("gamma1-D", 0) == 0 || r.name.rfind("gamma2-D", 0) == 0) t.add("gamma-D", r.value, 1e-10);
        for (const auto& r : kernel_identities(rd, kc)) {
            if (r.name == "B-identity") t.add("B-sum", r.value, 1e-10);
            if (r.informational) variants[r.name] = std::max(variants[r.name], r.value);
        }
    }
    Outcome o{t.ok, t.summary({"oracle", "constancy", "proportionality", "gamma-D", "B-sum"})};
    o.detail += "; variant-form discrepancies reported: " + std::to_string(variants.size());
    return o;
}

Outcome hunter_criterion() {
    MaxTracker t;
    for (const auto& rd : rooted(10, 1006)) {
        KernelConstants kc = kernel_constants(rd);
        Kernel K(kc);
        t.add("closed", K.hunter_residual(), 0.0);
        auto q = [&](double kp) {
            cplx s = 0.0;
            for (auto v : q_oracle(rd, 1.0, kp)) s += v;
            return s;
        };
        double scale = std::abs(kc.Q_nat);
        t.add("oracle", std::abs(q(1e-6) - std::conj(q(-1e-6))) / scale, 1e-4);
    }
    return {t.ok, t.summary({"closed", "oracle"})};
}

double rel_change(const SpectralField& a, const SpectralField& b) {
    // compares on the wavenumbers common to both grids (same dk)
    const int N = std::min(a.N, b.N);
    double num = 0.0, den = 0.0;
    for (int n = -N; n <= N; ++n) {
        num += std::norm(a.at(n) - b.at(n));
        den += std::norm(a.at(n));
    }
    return std::sqrt(num / den);
}

Outcome simulation_criterion() {
    MaxTracker t;
    RootData rd = find_root(pwtest::fixture_a(), pwtest::unit_tangent(2));
    KernelConstants kc = kernel_constants(rd);
    Kernel K(kc);

    SimConfig small;
    small.N = 256;
    small.dk = 0.05;
    small.dt = 0.01;
    small.T = 10.0;
    small.output_every = 1;
    small.init = {"gaussian_bump", 1e-3, 1.0, 0.5, 0};
    auto t0 = std::chrono::steady_clock::now();
    SimulationResult run = run_simulation(K, kc.alpha0, small);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double drift = 0.0;
    for (const auto& d : run.diag) drift = std::max(drift, std::abs(d.mean - run.diag.front().mean));
    t.add("steps", run.steps == 1000 && !run.blowup ? 0.0 : 1.0, 0.0);
    t.add("mean", drift, 1e-12);
    t.add("runtime-N256", secs, 30.0);
    t.add("hermitian", hermitian_deviation(run.final_field), 1e-13);

    SimConfig coarse = small;
    coarse.N = 128;
    SimulationResult run_c = run_simulation(K, kc.alpha0, coarse);
    t.add("N-refinement", rel_change(run.final_field, run_c.final_field), 0.01);
    // same comparison for w(T) - w(0), which the linear part does not hide
    SpectralField inc = run.final_field, inc_c = run_c.final_field;
    SpectralField w0 = init_field(small), w0_c = init_field(coarse);
    for (size_t i = 0; i < inc.what.size(); ++i) inc.what[i] -= w0.what[i];
    for (size_t i = 0; i < inc_c.what.size(); ++i) inc_c.what[i] -= w0_c.what[i];
    t.worst["increment-refinement"] = rel_change(inc, inc_c);

    // rhs properties on rough data, without the final symmetrization
    SimConfig rough = small;
    rough.N = 64;
    rough.dk = 0.1;
    rough.init = {"random_smooth", 1.0, 1.0, 0.5, 77};
    SpectralField f = init_field(rough);
    SpectralField direct(f.dk, f.N);
    double dmax = 0.0;
    for (int n = -f.N; n <= f.N; ++n) {
        cplx s = 0.0;
        for (int m = std::max(-f.N, n - f.N); m <= std::min(f.N, n + f.N); ++m)
            if (!(n == 0 && m == 0)) s += K.a1(f.k(n - m), f.k(m)) * f.at(n - m) * f.at(m);
        direct.at(n) = -cplx(0, f.k(n)) / kc.alpha0 * s * f.dk;
        dmax = std::max(dmax, std::abs(direct.at(n)));
    }
    t.add("hermitian", hermitian_deviation(direct) / dmax, 1e-13);
    ConvolutionTable table(K, kc.alpha0, f.dk, f.N);
    SpectralField g = f;
    for (auto& v : g.what) v *= 2.5;
    SpectralField a = table.rhs(g), b = table.rhs(f);
    double hom = 0.0, bmax = 0.0;
    for (int n = -f.N; n <= f.N; ++n) {
        hom = std::max(hom, std::abs(a.at(n) - 6.25 * b.at(n)));
        bmax = std::max(bmax, std::abs(6.25 * b.at(n)));
    }
    t.add("homogeneity", hom / bmax, 1e-13);

    SimConfig order;
    order.N = 64;
    order.dk = 0.1;
    order.init = {"gaussian_bump", 1.0, 1.0, 0.5, 0};
    ConvolutionTable otable(K, kc.alpha0, order.dk, order.N);
    ConvergenceReport cr = self_convergence(init_field(order), otable, 0.1, 2.0);
    t.add("rk4-ratio-offset", std::abs(cr.ratio - 16.0) / 16.0, 0.2);
    t.worst["rk4-ratio"] = cr.ratio;

    return {t.ok, t.summary({"mean", "hermitian", "homogeneity", "rk4-ratio", "N-refinement", "increment-refinement", "runtime-N256"})};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome determinism_criterion() {
    const std::string cfg = R"({
      "d": 3,
      "left": {"rho": 1.0, "u": 0.9, "c2": 4.0, "pp": 0.5},
      "right": {"rho": 0.45, "u": 2.0, "c2": 9.0, "pp": 0.5},
      "mu": 1.0,
      "eta_t": [0.6, 0.8],
      "seed": 5,
      "sim": {"dk": 0.1, "N": 48, "dt": 0.01, "T": 0.5, "output_every": 5, "snapshots": true,
              "physical": true, "init": {"name": "random_smooth", "amplitude": 0.5}}
    })";
    bool ok = true;
    CommandResult c1 = run_command("coeffs", cfg, {}), c2 = run_command("coeffs", cfg, {});
    ok = ok && c1.exit_code == 0 && c1.out == c2.out && c1.err == c2.err;

    auto base = std::filesystem::temp_directory_path() / "phasewave_acceptance";
    std::filesystem::remove_all(base);
    std::string files[] = {"diag.csv", "snapshots.csv", "physical.csv", "summary.json"};
    std::string first[4];
    int compared = 0;
    for (int run = 0; run < 2; ++run) {
        CommandOptions opt;
        opt.out_dir = (base / ("run" + std::to_string(run))).string();
        opt.seed = 12345;
        CommandResult r = run_command("simulate", cfg, opt);
        ok = ok && r.exit_code == 0;
        for (int i = 0; i < 4; ++i) {
            std::string text = slurp(std::filesystem::path(*opt.out_dir) / files[i]);
            if (run == 0) {
                first[i] = text;
            } else {
                ok = ok && !text.empty() && text == first[i];
                ++compared;
            }
        }
    }
    std::filesystem::remove_all(base);
    return {ok, "coeffs stdout identical, " + std::to_string(compared) + " simulate files identical"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> list{
        {1, "mode structure", 5.0, modes_criterion},
        {2, "determinant equivalence", 5.0, lopatinskii_criterion},
        {3, "root and boundary coefficients", 0.0, root_criterion},
        {4, "alpha0 agreement", 0.0, alpha_criterion},
        {5, "kernel oracle equivalence", 0.0, kernel_criterion},
        {6, "Hunter condition", 0.0, hunter_criterion},
        {7, "simulation properties", 30.0, simulation_criterion},
        {8, "determinism", 0.0, determinism_criterion},
    };
    int failed = 0;
    double total = 0.0;
    for (const auto& c : list) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += secs;
        if (c.budget > 0.0 && secs > c.budget) {
            o.pass = false;
            o.detail += "; over time budget";
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %d (%s) [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(list.size()) - failed, list.size(), total);
    return failed == 0 ? 0 : 1;
}

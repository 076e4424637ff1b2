#include "phasewave/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "phasewave/config.hpp"
#include "phasewave/error.hpp"

namespace phasewave {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json cj(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json vec_json(const CVector& v) {
    ordered_json a = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cj(v(i)));
    return a;
}

ordered_json mat_json(const CMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
    return rows;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json residual_json(const Residual& r) {
    ordered_json o;
    o["name"] = r.name;
    o["residual"] = r.value;
    o["tolerance"] = r.tol;
    o["pass"] = r.pass();
    if (r.informational) o["informational"] = true;
    return o;
}

bool all_pass(const ResidualList& rs) {
    for (const auto& r : rs)
        if (!r.pass()) return false;
    return true;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorCode::config, "cannot write " + p.string());
    f << text;
    if (!f) fail(ErrorCode::config, "failed writing " + p.string());
}

std::filesystem::path output_dir(const RunConfig& cfg, const CommandOptions& opt) {
    std::string d = opt.out_dir ? *opt.out_dir : (cfg.output_dir.empty() ? "." : cfg.output_dir);
    std::filesystem::path p(d);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) fail(ErrorCode::config, "cannot create output directory " + d);
    return p;
}

CMatrix columns(const ModeSet& ms, Branch b, bool left) {
    const int n = ms.d + 1;
    CMatrix M(2 * n, n);
    for (int j = 1; j <= n; ++j) M.col(j - 1) = left ? ms.L(b, j) : ms.R(b, j);
    return M;
}

// ---- check ---------------------------------------------------------------

CommandResult cmd_check(const RunConfig& cfg) {
    ordered_json rep;
    ResidualList inv;
    const EquilibriumSpec& eq = cfg.equilibrium;
    CommandResult res;

    auto finish = [&](const ordered_json& debug) {
        bool ok = all_pass(inv);
        rep["status"] = ok ? "pass" : "fail";
        ordered_json list = ordered_json::array();
        for (const auto& r : inv) list.push_back(residual_json(r));
        rep["invariants"] = list;
        if (!debug.is_null()) rep["debug"] = debug;
        res.out = rep.dump(2) + "\n";
        res.exit_code = ok ? 0 : 1;
        for (const auto& r : inv)
            if (!r.pass()) res.err += "invariant failed: " + r.name + " (residual " + num(r.value) + ")\n";
        return res;
    };

    std::optional<PhaseBoundary> pb;
    if (!eq.from_eos) {
        auto subsonic = [](const FluidState& s) {
            return (s.rho > 0.0 && s.u > 0.0 && s.c2 > s.u * s.u) ? 0.0 : 1.0;
        };
        inv.push_back({"subsonic-left", subsonic(eq.left), 0.5});
        inv.push_back({"subsonic-right", subsonic(eq.right), 0.5});
        double jl = eq.left.rho * eq.left.u, jr = eq.right.rho * eq.right.u;
        inv.push_back({"mass-flux", std::abs(jl - jr) / std::abs(jl), 1e-10});
        inv.push_back({"jump-rho-nonzero", eq.right.rho != eq.left.rho ? 0.0 : 1.0, 0.5});
        inv.push_back({"jump-u-nonzero", eq.right.u != eq.left.u ? 0.0 : 1.0, 0.5});
        if (all_pass(inv)) pb = make_phase_boundary(eq.left, eq.right, eq.d, eq.mu);
    } else {
        try {
            pb = build_boundary(eq);
        } catch (const Error& e) {
            inv.push_back({std::string("equilibrium-solve (") + error_name(e.code()) + ": " + e.what() + ")",
                           1.0, 0.5});
        }
        if (pb) {
            EquationOfState eos = vdw_eos(eq.a, eq.b, eq.RT);
            JumpResiduals jr = jump_residuals(eos, pb->left.rho, pb->right.rho, pb->j);
            inv.push_back({"momentum-jump", std::abs(jr.momentum) / jr.scale, 1e-12});
            inv.push_back({"reversibility-jump", std::abs(jr.reversibility) / jr.scale, 1e-12});
            double mul = 0.5 * pb->left.u * pb->left.u + eos.g(pb->left.rho);
            double mur = 0.5 * pb->right.u * pb->right.u + eos.g(pb->right.rho);
            inv.push_back({"mu-equality", std::abs(mul - mur), 1e-12});
            double flux = std::abs(pb->left.rho * pb->left.u - pb->right.rho * pb->right.u) / pb->j;
            inv.push_back({"mass-flux", flux, 1e-10});
        }
    }
    if (!pb) return finish(nullptr);

    if (!(cfg.eta_t.norm() > 0.0)) {
        inv.push_back({"tangential-nonzero", 1.0, 0.5});
        return finish(nullptr);
    }

    const double emax = elliptic_limit(*pb, cfg.eta_t);
    Frequency probe{0.5 * emax, cfg.eta_t};
    for (auto r : mode_invariants(*pb, probe)) {
        r.name = "modes-" + r.name;
        inv.push_back(r);
    }

    double scan_dev = 0.0, scan_imag = 0.0;
    for (int i = 0; i < 100; ++i) {
        Frequency f{emax * (0.005 + 0.99 * i / 99.0), cfg.eta_t};
        cplx raw = lopatinskii_det(*pb, f, DetMethod::raw);
        cplx closed = lopatinskii_det(*pb, f, DetMethod::closed);
        double scale = lopatinskii_scale(*pb, f);
        scan_dev = std::max(scan_dev, std::abs(raw - closed) / scale);
        scan_imag = std::max(scan_imag, std::abs(raw.imag()) / scale);
    }
    inv.push_back({"delta-raw-vs-closed-scan", scan_dev, 1e-10});
    inv.push_back({"delta-real", scan_imag, 1e-12});

    RootData rd;
    try {
        rd = find_root(*pb, cfg.eta_t);
    } catch (const Error& e) {
        inv.push_back({"root-exists", 1.0, 0.5});
        return finish(nullptr);
    }
    inv.push_back({"root-sign-changes", static_cast<double>(rd.sign_changes), 1.0, true});
    for (auto r : mode_invariants(*pb, rd.eta)) {
        r.name = "root-modes-" + r.name;
        inv.push_back(r);
    }
    for (const auto& r : lopatinskii_identities(rd)) inv.push_back(r);

    ordered_json debug;
    debug["eta0"] = rd.eta.eta0;
    debug["H"] = mat_json(rd.ops.H);
    debug["R_minus"] = mat_json(columns(rd.modes, Branch::minus, false));
    debug["R_plus"] = mat_json(columns(rd.modes, Branch::plus, false));
    debug["L_minus"] = mat_json(columns(rd.modes, Branch::minus, true));
    debug["L_plus"] = mat_json(columns(rd.modes, Branch::plus, true));
    return finish(debug);
}

// ---- scan ----------------------------------------------------------------

CommandResult cmd_scan(const RunConfig& cfg, const CommandOptions& opt) {
    CommandResult res;
    PhaseBoundary pb = build_boundary(cfg.equilibrium);
    if (!(cfg.eta_t.norm() > 0.0)) fail(ErrorCode::degeneracy, "empty elliptic interval: eta_t is zero");
    const double emax = elliptic_limit(pb, cfg.eta_t);
    ScanSpec sc = cfg.scan ? *cfg.scan : ScanSpec{0.0, 0.99 * emax, 100};
    if (!(sc.eta0_min < sc.eta0_max) || sc.eta0_min <= -emax || sc.eta0_max >= emax)
        fail(ErrorCode::domain, "scan range must lie inside the elliptic interval (" + num(-emax) + ", " +
                                    num(emax) + ")");

    std::string csv = "eta0,re_delta_raw,im_delta_raw,re_delta_closed,im_delta_closed\n";
    double prev_e = 0.0, prev_f = 0.0;
    for (int i = 0; i < sc.steps; ++i) {
        double e0 = sc.eta0_min + (sc.eta0_max - sc.eta0_min) * i / (sc.steps - 1);
        Frequency f{e0, cfg.eta_t};
        cplx raw = lopatinskii_det(pb, f, DetMethod::raw);
        cplx closed = lopatinskii_det(pb, f, DetMethod::closed);
        csv += num(e0) + "," + num(raw.real()) + "," + num(raw.imag()) + "," + num(closed.real()) + "," +
               num(closed.imag()) + "\n";
        double F = root_function(pb, cfg.eta_t, e0);
        if (i > 0 && (F < 0.0) != (prev_f < 0.0))
            res.err += "sign change of F between eta0=" + num(prev_e) + " and eta0=" + num(e0) + "\n";
        prev_e = e0;
        prev_f = F;
    }
    if (opt.out_dir) write_file(output_dir(cfg, opt) / "scan.csv", csv);
    res.out = csv;
    return res;
}

// ---- root ----------------------------------------------------------------

ordered_json root_json(const RootData& rd) {
    ordered_json o;
    o["eta0"] = rd.eta.eta0;
    o["eta_t"] = std::vector<double>(rd.eta.eta_t.data(), rd.eta.eta_t.data() + rd.eta.eta_t.size());
    o["sign_changes"] = rd.sign_changes;
    o["a_l"] = rd.modes.a_l;
    o["a_r"] = rd.modes.a_r;
    o["upsilon"] = rd.sigma.upsilon;
    o["sigma_star"] = vec_json(rd.sigma.star);
    o["sigma"] = vec_json(rd.sigma.sigma());
    o["D1"] = cj(rd.sigma.D.D1);
    o["Dt"] = cj(rd.sigma.D.Dt);
    o["Dd1"] = cj(rd.sigma.D.Dd1);
    o["Dd2"] = cj(rd.sigma.D.Dd2);
    o["gamma1"] = cj(rd.gamma1);
    o["gamma2"] = cj(rd.gamma2);
    return o;
}

RootData root_or_fail(const PhaseBoundary& pb, const RVector& eta_t) {
    try {
        return find_root(pb, eta_t);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::no_root || e.code() == ErrorCode::degeneracy)
            fail(ErrorCode::no_root, std::string("no surface wave: ") + e.what());
        throw;
    }
}

CommandResult cmd_root(const RunConfig& cfg, const CommandOptions& opt) {
    CommandResult res;
    PhaseBoundary pb = build_boundary(cfg.equilibrium);
    RootData rd = root_or_fail(pb, cfg.eta_t);
    if (rd.sign_changes > 1)
        res.err += "warning: F changes sign " + std::to_string(rd.sign_changes) +
                   " times; the smallest root is reported\n";
    res.out = root_json(rd).dump(2) + "\n";
    if (opt.out_dir) write_file(output_dir(cfg, opt) / "root.json", res.out);
    return res;
}

// ---- coeffs --------------------------------------------------------------

CommandResult cmd_coeffs(const RunConfig& cfg, const CommandOptions& opt) {
    CommandResult res;
    PhaseBoundary pb = build_boundary(cfg.equilibrium);
    RootData rd = root_or_fail(pb, cfg.eta_t);
    KernelConstants kc = kernel_constants(rd);
    Kernel K(kc);
    OracleReport orc = oracle_vs_closed(rd, default_kernel_samples(cfg.kernel_samples));

    ResidualList ids = lopatinskii_identities(rd);
    for (const auto& r : kernel_identities(rd, kc)) ids.push_back(r);
    ids.push_back({"oracle-vs-closed", orc.max_rel_dev, 1e-9});
    ids.push_back({"oracle-vs-kernel", orc.max_rel_dev_kernel, 1e-9});
    ids.push_back({"region-positive-constancy", orc.positive_spread, 1e-10});
    ids.push_back({"region-mixed-proportionality", orc.mixed_spread, 1e-10});

    cplx a_abs = alpha0(rd, AlphaMethod::abstract_sum);
    ordered_json o;
    o["eta0"] = rd.eta.eta0;
    o["alpha0"] = kc.alpha0;
    o["alpha0_abstract"] = cj(a_abs);
    o["alpha0_fd"] = cj(alpha0(rd, AlphaMethod::fd_delta));
    o["alpha0_imag_relative"] = std::abs(a_abs.imag()) / std::abs(a_abs);
    o["Q"] = cj(kc.Q);
    o["Q_l"] = cj(kc.Q_l);
    o["Q_r"] = cj(kc.Q_r);
    o["Q_sharp"] = cj(kc.Q_sharp);
    o["Q_b"] = cj(kc.Q_b);
    o["Q_nat"] = cj(kc.Q_nat);
    o["omega1"] = cj(kc.omega1);
    o["omega2"] = cj(kc.omega2);
    o["omega3"] = cj(kc.omega3);
    o["gamma1"] = cj(rd.gamma1);
    o["gamma2"] = cj(rd.gamma2);
    o["hunter_residual"] = K.hunter_residual();
    o["oracle_max_deviation"] = orc.max_rel_dev;
    o["oracle_samples"] = static_cast<int>(orc.samples.size());
    ordered_json idj;
    for (const auto& r : ids) idj[r.name] = r.value;
    o["identity_residuals"] = idj;
    ordered_json fails = ordered_json::array();
    ordered_json informational = ordered_json::array();
    for (const auto& r : ids) {
        if (!r.pass()) fails.push_back(r.name);
        if (r.informational) informational.push_back(r.name);
    }
    o["identity_failures"] = fails;
    o["variant_form_discrepancies"] = informational;

    res.out = o.dump(2) + "\n";
    if (opt.out_dir) write_file(output_dir(cfg, opt) / "coeffs.json", res.out);
    if (!fails.empty()) {
        res.exit_code = 1;
        for (const auto& f : fails) res.err += "identity failed: " + f.get<std::string>() + "\n";
    }
    return res;
}

// ---- simulate ------------------------------------------------------------

CommandResult cmd_simulate(const RunConfig& cfg, const CommandOptions& opt) {
    CommandResult res;
    if (!cfg.sim) fail(ErrorCode::config, "simulate needs a 'sim' section");
    SimConfig sc = *cfg.sim;
    sc.init.seed = opt.seed ? *opt.seed : cfg.seed;
    sc.validate();
    PhaseBoundary pb = build_boundary(cfg.equilibrium);
    RootData rd = root_or_fail(pb, cfg.eta_t);
    KernelConstants kc = kernel_constants(rd);
    Kernel K(kc);
    SimulationResult sim = run_simulation(K, kc.alpha0, sc);
    sim.eta0 = rd.eta.eta0;
    auto dir = output_dir(cfg, opt);

    std::string diag = "tau,mean_re,mean_im,l2,h2,max_abs\n";
    for (const auto& d : sim.diag)
        diag += num(d.tau) + "," + num(d.mean.real()) + "," + num(d.mean.imag()) + "," + num(d.l2) + "," +
                num(d.h2) + "," + num(d.max_abs) + "\n";
    write_file(dir / "diag.csv", diag);

    if (sc.snapshots) {
        std::string s = "tau,k,re_what,im_what\n";
        for (const auto& [tau, f] : sim.snapshots)
            for (int n = -f.N; n <= f.N; ++n)
                s += num(tau) + "," + num(f.k(n)) + "," + num(f.at(n).real()) + "," + num(f.at(n).imag()) + "\n";
        write_file(dir / "snapshots.csv", s);
    }
    if (sc.physical) {
        std::string s = "tau,x,w\n";
        auto emit = [&](double tau, const SpectralField& f) {
            for (const auto& p : physical_space(f)) s += num(tau) + "," + num(p.x) + "," + num(p.w) + "\n";
        };
        if (sc.snapshots) {
            for (const auto& [tau, f] : sim.snapshots) emit(tau, f);
        } else {
            emit(0.0, init_field(sc));
            emit(sim.diag.back().tau, sim.final_field);
        }
        write_file(dir / "physical.csv", s);
    }

    ordered_json o;
    o["eta0"] = sim.eta0;
    o["alpha0"] = sim.alpha0;
    o["steps"] = sim.steps;
    o["final_tau"] = sim.diag.back().tau;
    o["blowup"] = sim.blowup;
    if (sim.blowup) {
        o["breaking_time"] = sim.breaking_time;
        res.err += "breaking detected at tau=" + num(sim.breaking_time) + "\n";
    }
    o["mean_drift"] = std::abs(sim.diag.back().mean - sim.diag.front().mean);
    if (sc.order_check) {
        ConvolutionTable table(K, kc.alpha0, sc.dk, sc.N);
        ConvergenceReport cr = self_convergence(init_field(sc), table, sc.dt, sc.T);
        ordered_json oc;
        oc["diff_dt_dt2"] = cr.diff_coarse;
        oc["diff_dt2_dt4"] = cr.diff_fine;
        oc["ratio"] = cr.ratio;
        oc["order"] = cr.order;
        o["order_check"] = oc;
    }
    res.out = o.dump(2) + "\n";
    write_file(dir / "summary.json", res.out);
    return res;
}

}  // namespace

CommandResult run_command(const std::string& command, const std::string& config_text,
                          const CommandOptions& options) {
    CommandResult res;
    RunConfig cfg;
    try {
        cfg = parse_run_config(config_text);
    } catch (const Error& e) {
        res.exit_code = 2;
        res.err = std::string("config parse error: ") + e.what() + "\n";
        return res;
    }
    try {
        if (command == "check") return cmd_check(cfg);
        if (command == "scan") return cmd_scan(cfg, options);
        if (command == "root") return cmd_root(cfg, options);
        if (command == "coeffs") return cmd_coeffs(cfg, options);
        if (command == "simulate") return cmd_simulate(cfg, options);
        res.exit_code = 2;
        res.err = "unknown command '" + command + "'\n";
    } catch (const Error& e) {
        res.exit_code = 1;
        res.err += std::string(error_name(e.code())) + " error: " + e.what() + "\n";
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.err += std::string("error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace phasewave

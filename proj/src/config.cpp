#include "phasewave/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "phasewave/error.hpp"

namespace phasewave {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::parse, what); }

void only_fields(const json& j, const std::string& where, std::set<std::string> allowed) {
    if (!j.is_object()) bad(where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad("unknown field '" + it.key() + "' in " + where);
}

const json& field(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) bad("missing field '" + key + "' in " + where);
    return *it;
}

double number(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number()) bad("field '" + key + "' in " + where + " must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) bad("field '" + key + "' in " + where + " must be finite");
    return x;
}

double number_or(const json& j, const std::string& key, const std::string& where, double dflt) {
    return j.contains(key) ? number(j, key, where) : dflt;
}

long long integer(const json& j, const std::string& key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number_integer()) bad("field '" + key + "' in " + where + " must be an integer");
    return v.get<long long>();
}

bool boolean_or(const json& j, const std::string& key, const std::string& where, bool dflt) {
    if (!j.contains(key)) return dflt;
    const json& v = j.at(key);
    if (!v.is_boolean()) bad("field '" + key + "' in " + where + " must be a boolean");
    return v.get<bool>();
}

FluidState parse_state(const json& j, const std::string& where) {
    only_fields(j, where, {"rho", "u", "c2", "pp"});
    FluidState s;
    s.rho = number(j, "rho", where);
    s.u = number(j, "u", where);
    s.c2 = number(j, "c2", where);
    s.pp = number(j, "pp", where);
    return s;
}

Interval parse_interval(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad(where + " must be a [lo, hi] pair of numbers");
    return {j[0].get<double>(), j[1].get<double>()};
}

SimConfig parse_sim(const json& j) {
    only_fields(j, "sim", {"dk", "N", "dt", "T", "init", "output_every", "blowup_factor",
                           "snapshots", "physical", "order_check"});
    SimConfig c;
    c.dk = number(j, "dk", "sim");
    c.N = static_cast<int>(integer(j, "N", "sim"));
    c.dt = number(j, "dt", "sim");
    c.T = number(j, "T", "sim");
    if (j.contains("output_every")) c.output_every = static_cast<int>(integer(j, "output_every", "sim"));
    c.blowup_factor = number_or(j, "blowup_factor", "sim", c.blowup_factor);
    c.snapshots = boolean_or(j, "snapshots", "sim", false);
    c.physical = boolean_or(j, "physical", "sim", false);
    c.order_check = boolean_or(j, "order_check", "sim", false);
    const json& init = field(j, "init", "sim");
    only_fields(init, "sim.init", {"name", "amplitude", "k0", "width"});
    const json& name = field(init, "name", "sim.init");
    if (!name.is_string()) bad("sim.init.name must be a string");
    c.init.name = name.get<std::string>();
    c.init.amplitude = number_or(init, "amplitude", "sim.init", c.init.amplitude);
    c.init.k0 = number_or(init, "k0", "sim.init", c.init.k0);
    c.init.width = number_or(init, "width", "sim.init", c.init.width);
    return c;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    only_fields(root, "config", {"d", "left", "right", "mu", "eos", "brackets", "j", "eta_t", "scan",
                                 "sim", "kernel_samples", "output_dir", "seed"});
    RunConfig cfg;
    EquilibriumSpec& eq = cfg.equilibrium;
    long long d = integer(root, "d", "config");
    if (d < 2 || d > 16) bad("d must be between 2 and 16");
    eq.d = static_cast<int>(d);

    bool raw = root.contains("left") || root.contains("right") || root.contains("mu");
    bool eos = root.contains("eos") || root.contains("brackets") || root.contains("j");
    if (raw == eos) bad("config needs either left/right/mu or eos/brackets/j");
    if (raw) {
        eq.left = parse_state(field(root, "left", "config"), "left");
        eq.right = parse_state(field(root, "right", "config"), "right");
        eq.mu = number(root, "mu", "config");
    } else {
        eq.from_eos = true;
        const json& e = field(root, "eos", "config");
        only_fields(e, "eos", {"a", "b", "RT"});
        eq.a = number(e, "a", "eos");
        eq.b = number(e, "b", "eos");
        eq.RT = number(e, "RT", "eos");
        const json& br = field(root, "brackets", "config");
        if (!br.is_array() || br.size() != 2) bad("brackets must be [[lo,hi],[lo,hi]]");
        eq.bracket_left = parse_interval(br[0], "brackets[0]");
        eq.bracket_right = parse_interval(br[1], "brackets[1]");
        eq.j = number(root, "j", "config");
    }

    const json& et = field(root, "eta_t", "config");
    if (!et.is_array() || et.size() != static_cast<size_t>(eq.d - 1))
        bad("eta_t must be an array of length d-1");
    cfg.eta_t = RVector(eq.d - 1);
    for (int i = 0; i < eq.d - 1; ++i) {
        if (!et[i].is_number()) bad("eta_t entries must be numbers");
        cfg.eta_t(i) = et[i].get<double>();
    }

    if (root.contains("scan")) {
        const json& s = root.at("scan");
        only_fields(s, "scan", {"eta0_min", "eta0_max", "steps"});
        ScanSpec sc;
        sc.eta0_min = number(s, "eta0_min", "scan");
        sc.eta0_max = number(s, "eta0_max", "scan");
        sc.steps = static_cast<int>(integer(s, "steps", "scan"));
        if (sc.steps < 2) bad("scan.steps must be at least 2");
        cfg.scan = sc;
    }
    if (root.contains("sim")) cfg.sim = parse_sim(root.at("sim"));
    if (root.contains("kernel_samples")) {
        long long n = integer(root, "kernel_samples", "config");
        if (n < 1 || n > 10000) bad("kernel_samples must be between 1 and 10000");
        cfg.kernel_samples = static_cast<int>(n);
    }
    if (root.contains("output_dir")) {
        if (!root.at("output_dir").is_string()) bad("output_dir must be a string");
        cfg.output_dir = root.at("output_dir").get<std::string>();
    }
    if (root.contains("seed")) {
        const json& s = root.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            bad("seed must be a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    return cfg;
}

PhaseBoundary build_boundary(const EquilibriumSpec& spec) {
    if (!spec.from_eos) return make_phase_boundary(spec.left, spec.right, spec.d, spec.mu);
    EquationOfState eos = vdw_eos(spec.a, spec.b, spec.RT);
    return solve_reversible_boundary(eos, spec.bracket_left, spec.bracket_right, spec.j, spec.d);
}

}  // namespace phasewave

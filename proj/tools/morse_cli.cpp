// morse: command-line driver for the Morse bound-state solver, dipole sweeps,
// two-mode level sets and pulse plans. Emits CSV or JSON.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "morse/morse.hpp"

namespace {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kNumericalFailure = 3 };

struct RunConfig {
    // physics
    double c = 10.0;
    std::optional<double> c_min, c_max, c_step;
    std::vector<double> c_list;
    double alpha = 2.0;
    double x0 = 1.0;
    double mass = 1.0;
    double hbar = 1.0;
    // solver
    double h = 1e-3;
    double x_max = 12.0;
    bool adaptive_domain = false;
    double tolerance = 1e-9;
    // output
    std::string format = "csv";
    std::string out;
    // wavefunction
    int n = 1;
    int decimate = 1;
    // levelset / plan
    double c1 = 10.0;
    double c2 = 12.0;
    double energy = -4.0;
    int samples = 64;
    std::string spectra = "analytic";
    std::vector<double> from_angles, to_angles, from_a0, to_a0;
    double amplitude = 0.1;
};

/// Reference signed dipoles keyed by integer depth.
const std::map<int, double>& reference_dipoles() {
    static const std::map<int, double> table{{6, -0.0003}, {7, -0.0003},  {8, -0.588},
                                             {9, -0.604},  {10, -0.609},  {11, -0.6089},
                                             {12, -0.607}, {13, -0.602},  {14, -0.597}};
    return table;
}

std::optional<double> reference_dipole(double c) {
    const double r = std::round(c);
    if (std::abs(c - r) > 1e-12) return std::nullopt;
    const auto it = reference_dipoles().find(static_cast<int>(r));
    if (it == reference_dipoles().end()) return std::nullopt;
    return it->second;
}

std::string num(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

morse::ShootingOptions solver_options(const RunConfig& cfg) {
    morse::ShootingOptions opts;
    opts.grid = morse::Grid(0.0, cfg.x_max, cfg.h);
    opts.adaptive_domain = cfg.adaptive_domain;
    opts.energy_tolerance = cfg.tolerance;
    return opts;
}

morse::MorsePotential potential(const RunConfig& cfg, double c) {
    return morse::MorsePotential(c, cfg.alpha, cfg.x0, cfg.mass, cfg.hbar);
}

/// Depths requested by --c, --c-list or --c-min/--c-max/--c-step.
std::vector<double> depths(const RunConfig& cfg) {
    if (!cfg.c_list.empty()) return cfg.c_list;
    if (cfg.c_min || cfg.c_max || cfg.c_step) {
        if (!cfg.c_min || !cfg.c_max) throw morse::InvalidArgument("--c-min and --c-max must be given together");
        const double step = cfg.c_step.value_or(1.0);
        if (!(step > 0.0)) throw morse::InvalidArgument("--c-step must be positive");
        if (*cfg.c_max < *cfg.c_min) throw morse::InvalidArgument("--c-max must not be below --c-min");
        std::vector<double> out;
        const auto count = static_cast<long>(std::floor((*cfg.c_max - *cfg.c_min) / step + 1e-9));
        for (long i = 0; i <= count; ++i) out.push_back(*cfg.c_min + static_cast<double>(i) * step);
        return out;
    }
    return {cfg.c};
}

/// Fails fast on every parameter before any solve starts.
void validate(const RunConfig& cfg, const std::vector<double>& cs) {
    for (double c : cs) (void)potential(cfg, c);
    (void)solver_options(cfg);
    if (cfg.format != "csv" && cfg.format != "json") throw morse::InvalidArgument("--format must be csv or json");
    if (!(cfg.tolerance > 0.0)) throw morse::InvalidArgument("--tolerance must be positive");
}

template <class Fn>
auto run_ordered(const std::vector<double>& cs, Fn fn) {
    using Row = decltype(fn(0.0));
    std::vector<std::future<Row>> jobs;
    jobs.reserve(cs.size());
    for (double c : cs) jobs.push_back(std::async(std::launch::async, fn, c));
    std::vector<Row> rows;
    rows.reserve(cs.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumRow {
    double c = 0.0;
    int n = -1;
    double shooting = NAN;
    double fd = NAN;
    double analytic = NAN;
    std::string status = "ok";
};

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const auto cs = depths(cfg);
    validate(cfg, cs);
    const auto opts = solver_options(cfg);

    const auto per_depth = run_ordered(cs, [&](double c) {
        std::vector<SpectrumRow> rows;
        const auto p = potential(cfg, c);
        const auto levels = morse::analytic_spectrum(p);
        try {
            for (const auto& s : morse::all_bound_states(p, opts)) {
                SpectrumRow row{c, s.n, s.energy};
                try {
                    row.fd = morse::fd_reference_spectrum(p, s.wavefunction.grid, s.n + 1)[static_cast<std::size_t>(s.n)];
                } catch (const morse::GridTooCoarse&) {
                }
                if (static_cast<std::size_t>(s.n) < levels.size()) row.analytic = levels[static_cast<std::size_t>(s.n)];
                rows.push_back(row);
            }
        } catch (const morse::NoConvergence&) {
            rows.push_back({c, -1, NAN, NAN, NAN, "NoConvergence"});
        }
        return rows;
    });

    bool failed = false;
    json arr = json::array();
    std::ostringstream csv;
    csv << "c,n,E_shooting,E_fd_oracle,E_analytic,status\n";
    for (const auto& rows : per_depth) {
        for (const auto& r : rows) {
            failed = failed || r.status != "ok";
            csv << num(r.c) << ',' << (r.n >= 0 ? std::to_string(r.n) : "") << ',' << num(r.shooting) << ','
                << num(r.fd) << ',' << num(r.analytic) << ',' << r.status << '\n';
            arr.push_back({{"c", r.c},
                           {"n", r.n >= 0 ? json(r.n) : json(nullptr)},
                           {"E_shooting", jnum(r.shooting)},
                           {"E_fd_oracle", jnum(r.fd)},
                           {"E_analytic", jnum(r.analytic)},
                           {"status", r.status}});
        }
    }
    out << (cfg.format == "json" ? arr.dump(2) + "\n" : csv.str());
    return failed ? kNumericalFailure : kOk;
}

// ---------------------------------------------------------------- dipole

int cmd_dipole(const RunConfig& cfg, std::ostream& out) {
    const auto cs = depths(cfg);
    validate(cfg, cs);
    const auto opts = solver_options(cfg);

    const auto rows = run_ordered(
        cs, [&](double c) { return morse::dipole_at_depth(c, opts, cfg.alpha, cfg.x0, cfg.mass, cfg.hbar); });

    bool failed = false;
    json arr = json::array();
    std::ostringstream csv;
    csv << "c,d_signed,abs_d,reference_d,status\n";
    for (const auto& r : rows) {
        failed = failed || r.status == "NoConvergence";
        const double d = r.dipole ? r.dipole->value : NAN;
        const auto ref = reference_dipole(r.depth);
        csv << num(r.depth) << ',' << num(d) << ',' << num(std::abs(d)) << ',' << (ref ? num(*ref) : "") << ','
            << r.status << '\n';
        arr.push_back({{"c", r.depth},
                       {"d", jnum(d)},
                       {"abs_d", jnum(std::abs(d))},
                       {"error_estimate", r.dipole ? json(r.dipole->error_estimate) : json(nullptr)},
                       {"reference_d", ref ? json(*ref) : json(nullptr)},
                       {"status", r.status}});
    }
    out << (cfg.format == "json" ? arr.dump(2) + "\n" : csv.str());
    return failed ? kNumericalFailure : kOk;
}

// ---------------------------------------------------------------- wavefunction

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out) {
    validate(cfg, {cfg.c});
    if (cfg.n < 0) throw morse::InvalidArgument("--n must be non-negative");
    if (cfg.decimate < 1) throw morse::InvalidArgument("--decimate must be >= 1");
    const auto p = potential(cfg, cfg.c);
    const auto opts = solver_options(cfg);
    const auto grid = morse::resolve_grid(p, cfg.n, opts);

    std::vector<morse::BoundState> states;
    for (int k = 0; k <= cfg.n; ++k) states.push_back(morse::find_bound_state_on(p, k, opts, grid));

    const auto step = static_cast<std::size_t>(cfg.decimate);
    if (cfg.format == "json") {
        json doc;
        doc["c"] = cfg.c;
        json energies = json::array();
        for (const auto& s : states) energies.push_back(s.energy);
        doc["energies"] = energies;
        json xs = json::array();
        for (std::size_t i = 0; i < grid.size(); i += step) xs.push_back(grid.x_at(i));
        doc["x"] = xs;
        for (const auto& s : states) {
            json col = json::array();
            for (std::size_t i = 0; i < grid.size(); i += step) col.push_back(s.wavefunction.values[i]);
            doc["phi_" + std::to_string(s.n)] = col;
        }
        out << doc.dump(2) << "\n";
        return kOk;
    }
    for (const auto& s : states) out << "# E_" << s.n << "=" << num(s.energy) << "\n";
    out << "x";
    for (const auto& s : states) out << ",phi_" << s.n;
    out << "\n";
    for (std::size_t i = 0; i < grid.size(); i += step) {
        out << num(grid.x_at(i));
        for (const auto& s : states) out << ',' << num(s.wavefunction.values[i]);
        out << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- levelset / plan

morse::TwoModeSystem build_system(const RunConfig& cfg, bool need_dipoles) {
    if (cfg.spectra != "analytic" && cfg.spectra != "shooting")
        throw morse::InvalidArgument("--spectra must be analytic or shooting");
    const auto opts = solver_options(cfg);
    const auto mode = [&](double c, int label) {
        const auto p = potential(cfg, c);
        if (cfg.spectra == "shooting") return morse::mode_from_solver(p, opts, label);
        double d = 0.0;
        if (need_dipoles) {
            const auto [s0, s1] = morse::solve_two_lowest(p, opts);
            d = morse::transition_dipole(s0, s1).value;
        }
        return morse::mode_from_analytic(p, d, label);
    };
    return morse::TwoModeSystem(mode(cfg.c1, 1), mode(cfg.c2, 2));
}

json levels_json(const morse::TwoModeSystem& sys) {
    json modes = json::array();
    for (int label : {1, 2}) {
        const auto& m = sys.mode(label);
        modes.push_back({{"mode", label}, {"e0", m.e0}, {"e1", m.e1}, {"dipole", m.dipole}});
    }
    return modes;
}

int cmd_levelset(const RunConfig& cfg, std::ostream& out) {
    validate(cfg, {cfg.c1, cfg.c2});
    if (cfg.samples < 8) throw morse::InvalidArgument("--samples must be >= 8");
    const auto sys = build_system(cfg, false);
    const auto curve = morse::level_set(sys, cfg.energy, cfg.samples);

    if (cfg.format == "json") {
        json pts = json::array();
        for (const auto& pt : curve.samples) pts.push_back({{"a1", pt.a1}, {"a2", pt.a2}});
        json doc{{"c1", cfg.c1},
                 {"c2", cfg.c2},
                 {"energy", cfg.energy},
                 {"classification", morse::to_string(curve.kind)},
                 {"semi_axis_1", curve.semi_axis_1},
                 {"semi_axis_2", curve.semi_axis_2},
                 {"full_ellipse_condition", morse::full_ellipse_condition(sys, cfg.energy)},
                 {"modes", levels_json(sys)},
                 {"arc_starts", curve.arc_starts},
                 {"samples", pts}};
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "# classification=" << morse::to_string(curve.kind) << "\n";
    out << "# semi_axis_1=" << num(curve.semi_axis_1) << "\n";
    out << "# semi_axis_2=" << num(curve.semi_axis_2) << "\n";
    out << "arc,a1,a2\n";
    std::size_t arc = 0;
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
        while (arc + 1 < curve.arc_starts.size() && curve.arc_starts[arc + 1] <= i) ++arc;
        out << arc << ',' << num(curve.samples[i].a1) << ',' << num(curve.samples[i].a2) << "\n";
    }
    return kOk;
}

morse::ProductState state_from(const std::vector<double>& angles, const std::vector<double>& a0,
                               const char* what) {
    if (!angles.empty() && !a0.empty())
        throw morse::InvalidArgument(std::string("give either --") + what + " or --" + what + "-a0, not both");
    if (!a0.empty()) {
        if (a0.size() != 2) throw morse::InvalidArgument(std::string("--") + what + "-a0 needs two values");
        double theta[2];
        for (int i = 0; i < 2; ++i) {
            if (std::abs(a0[i]) > 1.0) throw morse::InvalidArgument("ground coefficients must lie in [-1, 1]");
            theta[i] = morse::angles_of(a0[i], std::sqrt(1.0 - a0[i] * a0[i]));
        }
        return {theta[0], theta[1]};
    }
    if (angles.size() != 2) throw morse::InvalidArgument(std::string("--") + what + " needs two angles");
    return morse::ProductState::from_angles(angles[0], angles[1]);
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
    validate(cfg, {cfg.c1, cfg.c2});
    if (!(cfg.amplitude > 0.0)) throw morse::InvalidArgument("--amplitude must be positive");
    const auto from = state_from(cfg.from_angles, cfg.from_a0, "from");
    const auto to = state_from(cfg.to_angles, cfg.to_a0, "to");
    const auto sys = build_system(cfg, true);

    const auto rot = morse::plan_rotation(from, to);
    const auto plan = morse::plan_pulses(sys, rot, cfg.amplitude, cfg.hbar);
    const double e_initial = morse::energy_expectation(sys, from);
    const double e_final = morse::energy_expectation(sys, morse::apply_rotation(rot, from));

    if (cfg.format == "json") {
        json pulses = json::array();
        for (const auto& p : plan.pulses)
            pulses.push_back({{"mode", p.mode},
                              {"carrier", p.carrier},
                              {"area", p.area},
                              {"duration", p.duration},
                              {"amplitude", p.amplitude},
                              {"direction", p.direction}});
        json doc{{"c1", cfg.c1},
                 {"c2", cfg.c2},
                 {"from", {from.theta1, from.theta2}},
                 {"to", {to.theta1, to.theta2}},
                 {"rotation", {rot.delta1, rot.delta2}},
                 {"modes", levels_json(sys)},
                 {"initial_energy", e_initial},
                 {"final_energy", e_final},
                 {"pulses", pulses}};
        out << doc.dump(2) << "\n";
        return kOk;
    }
    out << "# initial_energy=" << num(e_initial) << "\n";
    out << "# final_energy=" << num(e_final) << "\n";
    out << "mode,carrier,area,duration,amplitude,direction\n";
    for (const auto& p : plan.pulses)
        out << p.mode << ',' << num(p.carrier) << ',' << num(p.area) << ',' << num(p.duration) << ','
            << num(p.amplitude) << ',' << p.direction << "\n";
    return kOk;
}

// ---------------------------------------------------------------- wiring

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--alpha", cfg.alpha, "Inverse range of the potential")->capture_default_str();
    sub->add_option("--x0", cfg.x0, "Equilibrium position")->capture_default_str();
    sub->add_option("--mass", cfg.mass, "Reduced mass")->capture_default_str();
    sub->add_option("--hbar", cfg.hbar, "Reduced Planck constant")->capture_default_str();
    sub->add_option("--h", cfg.h, "Integration step")->capture_default_str();
    sub->add_option("--x-max", cfg.x_max, "Right end of the integration domain")->capture_default_str();
    sub->add_flag("--adaptive-domain", cfg.adaptive_domain, "Extend x-max per level from the tail decay length");
    sub->add_option("--tolerance", cfg.tolerance, "Relative eigenvalue tolerance")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path (default: standard output)");
    sub->add_option("--config", "key=value file; command-line flags take precedence");
}

void add_depths(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--c", cfg.c, "Well depth")->capture_default_str();
    sub->add_option("--c-min", cfg.c_min, "Sweep start");
    sub->add_option("--c-max", cfg.c_max, "Sweep end (inclusive)");
    sub->add_option("--c-step", cfg.c_step, "Sweep step");
    sub->add_option("--c-list", cfg.c_list, "Comma-separated depths")->delimiter(',');
}

void add_two_mode(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--c1", cfg.c1, "Depth of mode 1")->capture_default_str();
    sub->add_option("--c2", cfg.c2, "Depth of mode 2")->capture_default_str();
    sub->add_option("--spectra", cfg.spectra, "Level energies: analytic or shooting")->capture_default_str();
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw morse::InvalidArgument("cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int lineno = 0;
    const auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw morse::InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key=value");
        pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return pairs;
}

/// Config entries become `--key=value` arguments placed before the real ones,
/// so later command-line values win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (!path || args.empty()) return args;
    std::vector<std::string> out{args.front()};
    for (const auto& [key, value] : read_config(*path)) {
        if (key == "config") throw morse::InvalidArgument("config files cannot nest");
        out.push_back("--" + key + "=" + value);
    }
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

int run(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Morse oscillator bound states, dipoles, level sets and pulse plans", "morse"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    auto* spectrum = app.add_subcommand("spectrum", "Bound-state energies per depth: shooting, FD oracle, closed form");
    auto* dipole = app.add_subcommand("dipole", "Transition dipole <0|x|1> per depth");
    auto* wave = app.add_subcommand("wavefunction", "Normalized eigenfunctions phi_0..phi_n on the solver grid");
    auto* levelset = app.add_subcommand("levelset", "Constant-<E> set in the (a1^0, a2^0) plane");
    auto* plan = app.add_subcommand("plan", "Rotation and pulse plan between two product states");

    for (auto* sub : {spectrum, dipole, wave, levelset, plan}) add_common(sub, cfg);
    add_depths(spectrum, cfg);
    add_depths(dipole, cfg);
    wave->add_option("--c", cfg.c, "Well depth")->capture_default_str();
    wave->add_option("--n", cfg.n, "Highest level to emit")->capture_default_str();
    wave->add_option("--decimate", cfg.decimate, "Emit every k-th grid point")->capture_default_str();
    add_two_mode(levelset, cfg);
    levelset->add_option("--energy", cfg.energy, "Target <E>")->capture_default_str();
    levelset->add_option("--samples", cfg.samples, "Sample count")->capture_default_str();
    add_two_mode(plan, cfg);
    plan->add_option("--from", cfg.from_angles, "Initial angles theta1,theta2 (radians)")->delimiter(',')->expected(2);
    plan->add_option("--to", cfg.to_angles, "Final angles theta1,theta2 (radians)")->delimiter(',')->expected(2);
    plan->add_option("--from-a0", cfg.from_a0, "Initial ground coefficients a1^0,a2^0")->delimiter(',')->expected(2);
    plan->add_option("--to-a0", cfg.to_a0, "Final ground coefficients a1^0,a2^0")->delimiter(',')->expected(2);
    plan->add_option("--amplitude", cfg.amplitude, "Field amplitude")->capture_default_str();

    std::vector<std::string> expanded(argv + 1, argv + argc);
    try {
        expanded = expand_config(expanded);
    } catch (const morse::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    std::reverse(expanded.begin(), expanded.end());  // CLI11 consumes vectors back to front

    try {
        app.parse(expanded);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    std::ostringstream buffer;
    int code = kOk;
    try {
        if (*spectrum) code = cmd_spectrum(cfg, buffer);
        else if (*dipole) code = cmd_dipole(cfg, buffer);
        else if (*wave) code = cmd_wavefunction(cfg, buffer);
        else if (*levelset) code = cmd_levelset(cfg, buffer);
        else if (*plan) code = cmd_plan(cfg, buffer);
    } catch (const morse::ZeroDipole& e) {
        std::cerr << "ZeroDipole: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const morse::NoSuchBoundState& e) {
        std::cerr << "NoSuchBoundState: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const morse::NoConvergence& e) {
        std::cerr << "NoConvergence: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const morse::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    if (cfg.out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return kInvalidInput;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scarf/scarf.hpp"

namespace scarf::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Raised for anything that must be rejected before computation starts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::string> config, preset, variant, format, output, filter;
    std::optional<double> alpha0, gamma0, delta;
    std::optional<double> energy, energy_im, theta0_re, theta0_im;
    std::optional<double> t_start, t_end;
    std::optional<double> e_min, e_max, e_step, x_min, x_max;
    std::optional<std::int64_t> samples, seed;
    std::optional<bool> allow_outside_windows, no_refine;
};

enum class Command { Trajectory, SsScan, EnergyRange, Potential, Verify };

struct Preset {
    const char* name;
    Command command;
    Variant variant;
    double alpha0, gamma0, delta;
    std::optional<Complex> energy;
};

// Parameter sets of the reference figures. Energies are defaults only.
const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        {"fig1", Command::Potential, Variant::Hermitian, 2.0, 6.0, 2.0, std::nullopt},
        {"fig2", Command::Trajectory, Variant::Hermitian, 2.0, 6.0, 2.0, Complex{8.0, 0.0}},
        {"fig3", Command::Potential, Variant::PTSymmetric, 2.0, 6.0, 2.0, std::nullopt},
        {"fig4", Command::Trajectory, Variant::PTSymmetric, 2.0, 6.0, 2.0, Complex{8.0, 0.0}},
        {"fig5", Command::Trajectory, Variant::PTSymmetric, 2.0, 6.0, 2.0, Complex{8.0, 0.0}},
        {"fig6", Command::Trajectory, Variant::PTSymmetric, 2.0, 3.0, 2.0, Complex{4.0, 0.5}},
        {"fig7", Command::SsScan, Variant::PTSymmetric, 2.0, 4.0, 12.0, std::nullopt},
        {"fig8", Command::SsScan, Variant::PTSymmetric, 2.0, 4.0, 12.0, std::nullopt},
    };
    return table;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Trajectory: return "trajectory";
        case Command::SsScan: return "ss-scan";
        case Command::EnergyRange: return "energy-range";
        case Command::Potential: return "potential";
        case Command::Verify: return "verify";
    }
    return "?";
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json json_num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// ---------------------------------------------------------------------------
// config file

template <class T>
void fill_from_json(std::optional<T>& slot, const Json& value, const std::string& key) {
    if (slot) return;  // flags win
    try {
        slot = value.get<T>();
    } catch (const Json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

void merge_config_file(Options& o) {
    if (!o.config) return;
    std::ifstream in(*o.config);
    if (!in) throw ConfigError("cannot open config file " + *o.config);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");

    const std::map<std::string, std::function<void(const Json&, const std::string&)>> setters = {
        {"preset", [&](const Json& v, const std::string& k) { fill_from_json(o.preset, v, k); }},
        {"variant", [&](const Json& v, const std::string& k) { fill_from_json(o.variant, v, k); }},
        {"format", [&](const Json& v, const std::string& k) { fill_from_json(o.format, v, k); }},
        {"output", [&](const Json& v, const std::string& k) { fill_from_json(o.output, v, k); }},
        {"filter", [&](const Json& v, const std::string& k) { fill_from_json(o.filter, v, k); }},
        {"alpha0", [&](const Json& v, const std::string& k) { fill_from_json(o.alpha0, v, k); }},
        {"gamma0", [&](const Json& v, const std::string& k) { fill_from_json(o.gamma0, v, k); }},
        {"delta", [&](const Json& v, const std::string& k) { fill_from_json(o.delta, v, k); }},
        {"energy", [&](const Json& v, const std::string& k) { fill_from_json(o.energy, v, k); }},
        {"energy_im", [&](const Json& v, const std::string& k) { fill_from_json(o.energy_im, v, k); }},
        {"theta0_re", [&](const Json& v, const std::string& k) { fill_from_json(o.theta0_re, v, k); }},
        {"theta0_im", [&](const Json& v, const std::string& k) { fill_from_json(o.theta0_im, v, k); }},
        {"t_start", [&](const Json& v, const std::string& k) { fill_from_json(o.t_start, v, k); }},
        {"t_end", [&](const Json& v, const std::string& k) { fill_from_json(o.t_end, v, k); }},
        {"samples", [&](const Json& v, const std::string& k) { fill_from_json(o.samples, v, k); }},
        {"e_min", [&](const Json& v, const std::string& k) { fill_from_json(o.e_min, v, k); }},
        {"e_max", [&](const Json& v, const std::string& k) { fill_from_json(o.e_max, v, k); }},
        {"e_step", [&](const Json& v, const std::string& k) { fill_from_json(o.e_step, v, k); }},
        {"x_min", [&](const Json& v, const std::string& k) { fill_from_json(o.x_min, v, k); }},
        {"x_max", [&](const Json& v, const std::string& k) { fill_from_json(o.x_max, v, k); }},
        {"seed", [&](const Json& v, const std::string& k) { fill_from_json(o.seed, v, k); }},
        {"allow_outside_windows",
         [&](const Json& v, const std::string& k) { fill_from_json(o.allow_outside_windows, v, k); }},
        {"no_refine", [&](const Json& v, const std::string& k) { fill_from_json(o.no_refine, v, k); }},
    };
    for (const auto& [key, value] : doc.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(value, key);
    }
}

// ---------------------------------------------------------------------------
// resolution: flags > config file > preset > defaults

const Preset* resolve_preset(const Options& o, Command cmd) {
    if (!o.preset) return nullptr;
    for (const auto& p : presets()) {
        if (*o.preset == p.name) {
            if (p.command != cmd && cmd != Command::EnergyRange)
                throw ConfigError("preset " + *o.preset + " belongs to the '" + command_name(p.command) +
                                  "' command");
            return &p;
        }
    }
    throw ConfigError("unknown preset '" + *o.preset + "'");
}

ScarfParams resolve_params(const Options& o, const Preset* preset) {
    std::vector<std::string> missing;
    Variant variant = Variant::Hermitian;
    double gamma0 = 0.0;
    double delta = 0.0;
    if (preset) {
        variant = preset->variant;
        gamma0 = preset->gamma0;
        delta = preset->delta;
    }
    if (o.variant) {
        if (*o.variant == "hermitian") variant = Variant::Hermitian;
        else if (*o.variant == "pt") variant = Variant::PTSymmetric;
        else throw ConfigError("variant must be 'hermitian' or 'pt'");
    } else if (!preset) {
        missing.emplace_back("--variant");
    }
    if (o.gamma0) gamma0 = *o.gamma0;
    else if (!preset) missing.emplace_back("--gamma0");
    if (o.delta) delta = *o.delta;
    else if (!preset) missing.emplace_back("--delta");
    const double alpha0 = o.alpha0.value_or(preset ? preset->alpha0 : 2.0);
    if (!missing.empty()) {
        std::string msg = "missing parameters without a preset:";
        for (const auto& m : missing) msg += " " + m;
        throw ConfigError(msg);
    }
    try {
        return variant == Variant::Hermitian ? ScarfParams::hermitian(alpha0, gamma0, delta)
                                             : ScarfParams::pt_symmetric(alpha0, gamma0, delta);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

enum class Format { Csv, Json };

Format resolve_format(const Options& o) {
    const std::string f = o.format.value_or("csv");
    if (f == "csv") return Format::Csv;
    if (f == "json") return Format::Json;
    throw ConfigError("format must be 'csv' or 'json'");
}

std::size_t resolve_samples(const Options& o, std::size_t fallback) {
    if (!o.samples) return fallback;
    if (*o.samples < 2) throw ConfigError("--samples must be at least 2");
    return static_cast<std::size_t>(*o.samples);
}

/// "-" is stdout. SCARF_OUTPUT_DIR prefixes relative paths.
std::string resolve_output(const Options& o) {
    const std::string path = o.output.value_or("-");
    if (path == "-") return path;
    const char* dir = std::getenv("SCARF_OUTPUT_DIR");
    if (dir != nullptr && *dir != '\0' && std::filesystem::path(path).is_relative())
        return (std::filesystem::path(dir) / path).string();
    return path;
}

void emit(const std::string& payload, const std::string& path, std::ostream& out) {
    if (path == "-") {
        out << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open output file " + path);
    f << payload;
    f.flush();
    if (!f) throw IoError("failed writing output file " + path);
}

Json params_json(const ScarfParams& p) {
    Json j;
    j["variant"] = to_string(p.variant);
    j["alpha0"] = p.alpha0;
    j["gamma0"] = p.gamma0;
    j["coupling_re"] = p.coupling.real();
    j["coupling_im"] = p.coupling.imag();
    return j;
}

// ---------------------------------------------------------------------------
// commands

int cmd_trajectory(const Options& o, std::ostream& out, std::ostream& err) {
    const Preset* preset = resolve_preset(o, Command::Trajectory);
    TrajectorySpec spec;
    spec.params = resolve_params(o, preset);
    if (o.energy) {
        spec.energy = Complex{*o.energy, o.energy_im.value_or(0.0)};
    } else if (preset && preset->energy) {
        spec.energy = *preset->energy;
        if (o.energy_im) spec.energy = Complex{spec.energy.real(), *o.energy_im};
    } else {
        throw ConfigError("--energy is required unless a preset supplies one");
    }
    spec.theta0 = Complex{o.theta0_re.value_or(0.0), o.theta0_im.value_or(0.0)};
    spec.t_start = o.t_start.value_or(-2.0);
    spec.t_end = o.t_end.value_or(2.0);
    spec.samples = resolve_samples(o, 4001);
    spec.allow_outside_windows = o.allow_outside_windows.value_or(false);
    const Format format = resolve_format(o);
    const std::string path = resolve_output(o);
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    const Trajectory traj = sample_trajectory(spec);

    std::string payload;
    if (format == Format::Csv) {
        std::ostringstream s;
        s << "t,re_x,im_x,re_p,im_p,branch\n";
        for (std::size_t k = 0; k < traj.points.size(); ++k) {
            const auto& pt = traj.points[k];
            s << num(pt.t) << ',' << num(pt.x.real()) << ',' << num(pt.x.imag()) << ',' << num(pt.p.real())
              << ',' << num(pt.p.imag()) << ',' << traj.branch_log[k] << '\n';
        }
        payload = s.str();
    } else {
        Json doc;
        Json meta = params_json(spec.params);
        meta["preset"] = o.preset ? Json(*o.preset) : Json(nullptr);
        meta["energy_re"] = spec.energy.real();
        meta["energy_im"] = spec.energy.imag();
        meta["theta0_re"] = spec.theta0.real();
        meta["theta0_im"] = spec.theta0.imag();
        meta["t_start"] = spec.t_start;
        meta["t_end"] = spec.t_end;
        meta["samples"] = spec.samples;
        meta["max_energy_residual"] = traj.max_energy_residual;
        doc["meta"] = meta;
        Json samples = Json::array();
        for (std::size_t k = 0; k < traj.points.size(); ++k) {
            const auto& pt = traj.points[k];
            samples.push_back({{"t", pt.t},
                               {"re_x", pt.x.real()},
                               {"im_x", pt.x.imag()},
                               {"re_p", pt.p.real()},
                               {"im_p", pt.p.imag()},
                               {"branch", traj.branch_log[k]}});
        }
        doc["samples"] = std::move(samples);
        payload = doc.dump(2) + "\n";
    }
    emit(payload, path, out);
    if (path != "-") err << "wrote " << traj.points.size() << " samples to " << path << "\n";
    return static_cast<int>(ExitCode::Ok);
}

int cmd_ss_scan(const Options& o, std::ostream& out, std::ostream& err) {
    const Preset* preset = resolve_preset(o, Command::SsScan);
    const ScarfParams params = resolve_params(o, preset);
    if (!params.is_pt())
        throw ConfigError("domain error: spectral-singularity scans need the PT-symmetric variant");
    const double e_min = o.e_min.value_or(0.5);
    const double e_max = o.e_max.value_or(30.0);
    const double e_step = o.e_step.value_or(0.1);
    if (!(e_min > 0.0) || !(e_max > e_min) || !(e_step > 0.0))
        throw ConfigError("energy grid needs 0 < e-min < e-max and e-step > 0");
    ScanOptions scan_opts;
    scan_opts.t_start = o.t_start.value_or(-1.0);
    scan_opts.t_end = o.t_end.value_or(1.0);
    scan_opts.samples = resolve_samples(o, 2001);
    scan_opts.refine = !o.no_refine.value_or(false);
    if (!(scan_opts.t_end > scan_opts.t_start)) throw ConfigError("t-end must exceed t-start");
    const Complex theta0{o.theta0_re.value_or(0.0), o.theta0_im.value_or(0.0)};
    const Format format = resolve_format(o);
    const std::string path = resolve_output(o);

    const SingularityScan scan = scan_classical_ss(params, energy_grid(e_min, e_max, e_step), theta0, scan_opts);
    const bool peak = has_interior_peak(scan);
    const auto quantum = quantum_ss_condition(params, 10);
    const auto quantum_e = quantum_ss_energy(params);
    const bool classical = classical_ss_condition(params);
    const BarrierMomentum peak_value = scan.refined_peak_value.value_or(scan.peak_value);

    Json summary;
    summary["peak_detected"] = peak;
    summary["peak_energy"] = scan.best_peak_energy();
    summary["grid_peak_energy"] = scan.peak_energy;
    summary["peak_value"] = peak_value.divergent ? Json("divergent") : Json(peak_value.re_p);
    summary["classical_ss_condition"] = classical;
    summary["quantum_inequality"] = quantum.inequality_holds;
    summary["quantum_n"] = quantum.quantized_n ? Json(*quantum.quantized_n) : Json(nullptr);
    summary["quantum_ss_energy"] = quantum_e.value;
    summary["quantum_ss_physical"] = quantum_e.physical;
    summary["theta0_re"] = theta0.real();
    summary["theta0_im"] = theta0.imag();

    std::string payload;
    if (format == Format::Csv) {
        std::ostringstream s;
        s << "energy,barrier_re_p\n";
        for (std::size_t k = 0; k < scan.energies.size(); ++k) {
            const auto& m = scan.barrier_momentum[k];
            s << num(scan.energies[k]) << ',' << (m.divergent ? std::string("inf") : num(m.re_p)) << '\n';
        }
        payload = s.str();
    } else {
        Json doc;
        Json meta = params_json(params);
        meta["preset"] = o.preset ? Json(*o.preset) : Json(nullptr);
        meta["t_start"] = scan_opts.t_start;
        meta["t_end"] = scan_opts.t_end;
        meta["samples"] = scan_opts.samples;
        meta["summary"] = summary;
        doc["meta"] = meta;
        Json rows = Json::array();
        for (std::size_t k = 0; k < scan.energies.size(); ++k) {
            const auto& m = scan.barrier_momentum[k];
            rows.push_back({{"energy", scan.energies[k]},
                            {"barrier_re_p", m.divergent ? Json(nullptr) : Json(m.re_p)},
                            {"divergent", m.divergent}});
        }
        doc["samples"] = std::move(rows);
        payload = doc.dump(2) + "\n";
    }
    emit(payload, path, out);

    // Summary goes to stdout unless stdout already carries the table.
    std::ostream& summary_stream = path == "-" ? err : out;
    for (const auto& [key, value] : summary.items())
        summary_stream << key << ": " << (value.is_number_float() ? num(value.get<double>()) : value.dump())
                       << "\n";
    return static_cast<int>(ExitCode::Ok);
}

int cmd_energy_range(const Options& o, std::ostream& out, std::ostream&) {
    const ScarfParams params = resolve_params(o, resolve_preset(o, Command::EnergyRange));
    const Format format = resolve_format(o);
    const std::string path = resolve_output(o);
    const EnergyWindows w = energy_windows(params);
    std::string payload;
    if (format == Format::Csv) {
        std::ostringstream s;
        s << "lower,upper\n";
        for (const auto& iv : w.intervals) s << num(iv.lower) << ',' << num(iv.upper) << '\n';
        payload = s.str();
    } else {
        Json doc;
        Json meta = params_json(params);
        meta["all_positive"] = w.all_positive;
        doc["meta"] = meta;
        Json rows = Json::array();
        for (const auto& iv : w.intervals) rows.push_back({{"lower", iv.lower}, {"upper", json_num(iv.upper)}});
        doc["samples"] = std::move(rows);
        payload = doc.dump(2) + "\n";
    }
    emit(payload, path, out);
    return static_cast<int>(ExitCode::Ok);
}

int cmd_potential(const Options& o, std::ostream& out, std::ostream&) {
    const ScarfParams params = resolve_params(o, resolve_preset(o, Command::Potential));
    const double x_min = o.x_min.value_or(-6.0);
    const double x_max = o.x_max.value_or(6.0);
    if (!(x_max > x_min)) throw ConfigError("x-max must exceed x-min");
    const std::size_t n = resolve_samples(o, 1201);
    const Format format = resolve_format(o);
    const std::string path = resolve_output(o);
    const auto xs = detail::linspace(x_min, x_max, n);
    std::string payload;
    if (format == Format::Csv) {
        std::ostringstream s;
        s << "x,re_v,im_v\n";
        for (double x : xs) {
            const Complex v = potential(params, x);
            s << num(x) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
        }
        payload = s.str();
    } else {
        Json doc;
        doc["meta"] = params_json(params);
        Json rows = Json::array();
        for (double x : xs) {
            const Complex v = potential(params, x);
            rows.push_back({{"x", x}, {"re_v", v.real()}, {"im_v", v.imag()}});
        }
        doc["samples"] = std::move(rows);
        payload = doc.dump(2) + "\n";
    }
    emit(payload, path, out);
    return static_cast<int>(ExitCode::Ok);
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
    VerifyOptions v;
    v.filter = o.filter.value_or("");
    if (o.seed) v.seed = static_cast<std::uint64_t>(*o.seed);
    const auto results = run_verification(v);
    std::size_t failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.group << '.' << r.name << "  residual=" << num(r.residual)
            << "  tol=" << num(r.tolerance) << '\n';
        if (!r.passed) ++failed;
    }
    out << results.size() - failed << '/' << results.size() << " checks passed\n";
    if (results.empty()) {
        out << "no checks matched the filter\n";
        return static_cast<int>(ExitCode::ConfigError);
    }
    return static_cast<int>(failed == 0 ? ExitCode::Ok : ExitCode::CheckFailed);
}

// ---------------------------------------------------------------------------
// option wiring

template <class T>
void bind_option(CLI::App* app, const std::string& flag, std::optional<T>& slot, const std::string& help) {
    app->add_option_function<T>(flag, [&slot](const T& v) { slot = v; }, help);
}

void bind_flag(CLI::App* app, const std::string& flag, std::optional<bool>& slot, const std::string& help) {
    app->add_flag_function(flag, [&slot](std::int64_t) { slot = true; }, help);
}

void add_common(CLI::App* app, Options& o, bool with_output = true) {
    bind_option(app, "--config", o.config, "JSON config file; explicit flags override its values");
    bind_option(app, "--preset", o.preset, "Reference parameter set (fig1..fig8)");
    bind_option(app, "--variant", o.variant, "Potential variant: hermitian | pt");
    bind_option(app, "--alpha0", o.alpha0, "Scale alpha0 of sech(alpha0 x / 2) (default 2)");
    bind_option(app, "--gamma0", o.gamma0, "sech^2 strength gamma0 > 0");
    bind_option(app, "--delta", o.delta, "Coupling: delta (hermitian) or delta_I (pt, delta = i delta_I)");
    if (with_output) {
        bind_option(app, "--format", o.format, "Output format: csv | json (default csv)");
        bind_option(app, "--output", o.output, "Output file, '-' for stdout (default); SCARF_OUTPUT_DIR prefixes relative paths");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form classical scattering trajectories in Hermitian and PT-symmetric Scarf II potentials"};
    app.require_subcommand(1);
    Options o;
    Command command = Command::Verify;

    auto* traj = app.add_subcommand("trajectory", "Sample x(t), p(t) on a uniform time grid");
    add_common(traj, o);
    bind_option(traj, "--energy", o.energy, "Re E (required unless the preset supplies one)");
    bind_option(traj, "--energy-im", o.energy_im, "Im E (default 0)");
    bind_option(traj, "--theta0-re", o.theta0_re, "Re theta0 (default 0)");
    bind_option(traj, "--theta0-im", o.theta0_im, "Im theta0 (default 0)");
    bind_option(traj, "--t-start", o.t_start, "Start time (default -2)");
    bind_option(traj, "--t-end", o.t_end, "End time (default 2)");
    bind_option(traj, "--samples", o.samples, "Number of samples (default 4001)");
    bind_flag(traj, "--allow-outside-windows", o.allow_outside_windows,
              "Accept real energies outside the admissible windows");
    traj->callback([&] { command = Command::Trajectory; });

    auto* scan = app.add_subcommand("ss-scan", "Scan barrier Re p over energy and locate the spectral singularity");
    add_common(scan, o);
    bind_option(scan, "--e-min", o.e_min, "First grid energy (default 0.5)");
    bind_option(scan, "--e-max", o.e_max, "Last grid energy (default 30)");
    bind_option(scan, "--e-step", o.e_step, "Grid spacing (default 0.1)");
    bind_option(scan, "--theta0-re", o.theta0_re, "Re theta0 (default 0)");
    bind_option(scan, "--theta0-im", o.theta0_im, "Im theta0 (default 0)");
    bind_option(scan, "--t-start", o.t_start, "Window start time (default -1)");
    bind_option(scan, "--t-end", o.t_end, "Window end time (default 1)");
    bind_option(scan, "--samples", o.samples, "Samples per trajectory (default 2001)");
    bind_flag(scan, "--no-refine", o.no_refine, "Skip golden-section refinement of the peak");
    scan->callback([&] { command = Command::SsScan; });

    auto* range = app.add_subcommand("energy-range", "Admissible real scattering energies");
    add_common(range, o);
    range->callback([&] { command = Command::EnergyRange; });

    auto* pot = app.add_subcommand("potential", "Tabulate V(x) on the real axis");
    add_common(pot, o);
    bind_option(pot, "--x-min", o.x_min, "First x (default -6)");
    bind_option(pot, "--x-max", o.x_max, "Last x (default 6)");
    bind_option(pot, "--samples", o.samples, "Number of points (default 1201)");
    pot->callback([&] { command = Command::Potential; });

    auto* verify = app.add_subcommand("verify", "Run the invariant suite; exit 0 iff every check passes");
    bind_option(verify, "--config", o.config, "JSON config file");
    bind_option(verify, "--filter", o.filter, "Only run checks whose group.name contains this text");
    bind_option(verify, "--seed", o.seed, "Random seed for sampled points");
    verify->callback([&] { command = Command::Verify; });

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("scarf");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return static_cast<int>(ExitCode::Ok);
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return static_cast<int>(ExitCode::Ok);
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ConfigError);
    }

    try {
        merge_config_file(o);
        switch (command) {
            case Command::Trajectory: return cmd_trajectory(o, out, err);
            case Command::SsScan: return cmd_ss_scan(o, out, err);
            case Command::EnergyRange: return cmd_energy_range(o, out, err);
            case Command::Potential: return cmd_potential(o, out, err);
            case Command::Verify: return cmd_verify(o, out, err);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ConfigError);
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::IoError);
    } catch (const TrajectoryError& e) {
        err << "computation error at t=" << num(e.time()) << ": " << e.what() << "\n";
        return static_cast<int>(ExitCode::ComputeError);
    } catch (const Error& e) {
        err << "computation error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ComputeError);
    }
    return static_cast<int>(ExitCode::ConfigError);
}

}  // namespace scarf::cli

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "scarf/scarf.hpp"

using namespace scarf;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double stat(const BarrierMomentum& m) {
    return m.divergent ? std::numeric_limits<double>::infinity() : m.re_p;
}

const ScarfParams kFig7 = ScarfParams::pt_symmetric(2.0, 4.0, 12.0);

const SingularityScan& fig7_scan() {
    static const SingularityScan scan = scan_classical_ss(kFig7, energy_grid(0.5, 30.0, 0.1), 0.0);
    return scan;
}

Outcome ac1() {
    const auto start = std::chrono::steady_clock::now();
    const auto scan = scan_classical_ss(kFig7, energy_grid(0.5, 30.0, 0.1), 0.0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double e = scan.best_peak_energy();
    const bool located = std::abs(e - 13.7) <= 0.5;
    const bool sharp = has_interior_peak(scan);
    const bool fast = secs < 30.0;
    std::string peak = scan.peak_value.divergent ? "divergent" : fmt("%.6g", scan.peak_value.re_p);
    return {located && sharp && fast, "peak E_s=" + fmt("%.4f", e) + " (Re p " + peak + ") want 13.7+-0.5, sharp=" +
                                          (sharp ? "yes" : "no") + ", scan " + fmt("%.2f", secs) + " s < 30 s"};
}

Outcome ac2() {
    const auto& scan = fig7_scan();
    const double es = scan.best_peak_energy();
    int bad_rise = 0, bad_fall = 0, bad_tail = 0;
    double min_rise = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < scan.energies.size(); ++i) {
        const double e0 = scan.energies[i - 1], e1 = scan.energies[i];
        const double s0 = stat(scan.barrier_momentum[i - 1]), s1 = stat(scan.barrier_momentum[i]);
        if (e0 >= 10.0 - 1e-9 && e1 < es - 1e-9) {
            if (!(s1 > s0)) ++bad_rise;
            min_rise = std::min(min_rise, s1 - s0);
        }
        if (e0 > es + 1e-9 && e1 <= 20.0 + 1e-9 && !(s1 < s0)) ++bad_fall;
        if (e0 >= 20.0 - 1e-9 && e1 <= 30.0 + 1e-9 && !(s1 / std::sqrt(e1) < s0 / std::sqrt(e0))) ++bad_tail;
    }
    return {bad_rise == 0 && bad_fall == 0 && bad_tail == 0,
            "E_s=" + fmt("%.4f", es) + ": non-rising steps on [10,E_s) " + std::to_string(bad_rise) +
                " (smallest rise " + fmt("%.2e", min_rise) + "), non-falling on (E_s,20] " +
                std::to_string(bad_fall) + ", non-decreasing stat/sqrt(E) on [20,30] " + std::to_string(bad_tail)};
}

Outcome ac3() {
    const auto h = energy_windows(ScarfParams::hermitian(2.0, 6.0, 2.0));
    const auto pt = energy_windows(ScarfParams::pt_symmetric(2.0, 6.0, 2.0));
    const auto all = energy_windows(kFig7);
    const double tol = 1e-9;
    const bool h_ok = h.intervals.size() == 1 && std::abs(h.intervals[0].lower - 6.605551275463989) < tol &&
                      std::isinf(h.intervals[0].upper);
    const bool pt_ok = pt.intervals.size() == 2 && pt.intervals[0].lower == 0.0 &&
                       std::abs(pt.intervals[0].upper - 0.7639320225002103) < tol &&
                       std::abs(pt.intervals[1].lower - 5.23606797749979) < tol && std::isinf(pt.intervals[1].upper);
    const bool all_ok = all.all_positive && all.intervals.size() == 1 && all.intervals[0].lower == 0.0;
    return {h_ok && pt_ok && all_ok,
            "hermitian E>" + fmt("%.9f", h.intervals[0].lower) + ", pt (0," + fmt("%.9f", pt.intervals[0].upper) +
                ")U(" + fmt("%.9f", pt.intervals.back().lower) + ",inf), fig7 all_positive=" +
                (all.all_positive ? "true" : "false")};
}

Outcome ac4() {
    const auto start = std::chrono::steady_clock::now();
    UniformSource rng(4);
    const auto cases = random_admissible_cases(rng, 10, 0.0, 3.0);
    double pos = 0.0, mom = 0.0, energy = 0.0, velocity = 0.0;
    for (const auto& spec : cases) {
        const auto traj = sample_trajectory(spec);
        energy = std::max(energy, traj.max_energy_residual);
        velocity = std::max(velocity, traj.max_velocity_residual);
        const auto cmp = compare_with_oracle(spec);
        pos = std::max(pos, cmp.max_position_error);
        mom = std::max(mom, cmp.max_momentum_error);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double sup = std::max(pos, mom);
    return {cases.size() == 10 && sup < 1e-6 && energy < 1e-8 && velocity < 1e-4 && secs < 60.0,
            "10 cases: sup|cf-ode| " + fmt("%.2e", sup) + " < 1e-6, energy " + fmt("%.2e", energy) +
                " < 1e-8, dx/dt-2p " + fmt("%.2e", velocity) + " < 1e-4, " + fmt("%.2f", secs) + " s < 60 s"};
}

Outcome ac5() {
    const auto start = std::chrono::steady_clock::now();
    UniformSource rng(5);
    double identity = 0.0, bracket = 0.0, drift = 0.0;
    for (const auto& params : reference_parameter_sets()) {
        identity = std::max(identity, factorization_identity_residual(params, 1000, rng));
        bracket = std::max(bracket, ladder_hamiltonian_bracket_residual(params, random_on_shell_points(params, 100, rng)));
    }
    for (const auto& spec : random_admissible_cases(rng, 10, -3.0, 3.0)) drift = std::max(drift, q_drift(spec, 3.0));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {identity < 1e-10 && bracket < 1e-5 && drift < 1e-6 && secs < 10.0,
            "A+A-+gamma-H " + fmt("%.2e", identity) + " < 1e-10, {A,H} " + fmt("%.2e", bracket) +
                " < 1e-5, |Q| drift " + fmt("%.2e", drift) + " < 1e-6, " + fmt("%.2f", secs) + " s < 10 s"};
}

std::vector<std::vector<double>> cli_rows(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    if (cli::run(args, out, err) != 0) throw Error("cli failed: " + err.str());
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

Outcome ac6() {
    double herm_im = 0.0;
    for (const auto& row : cli_rows({"trajectory", "--preset", "fig2"}))
        herm_im = std::max({herm_im, std::abs(row[2]), std::abs(row[4])});

    // pointwise distance at equal t; the swept-out curve sets are reported alongside
    double min_pointwise = std::numeric_limits<double>::infinity();
    double min_im = std::numeric_limits<double>::infinity();
    std::string curves;
    for (const char* preset : {"fig5", "fig6"}) {
        std::vector<std::vector<std::vector<double>>> runs;
        for (const char* theta : {"0", "0.3", "0.6"})
            runs.push_back(cli_rows({"trajectory", "--preset", preset, "--theta0-re", theta}));
        double set_distance = std::numeric_limits<double>::infinity();
        for (const auto& run : runs) {
            double m = 0.0;
            for (const auto& row : run) m = std::max(m, std::abs(row[2]));
            min_im = std::min(min_im, m);
        }
        for (std::size_t a = 0; a < runs.size(); ++a) {
            for (std::size_t b = a + 1; b < runs.size(); ++b) {
                for (std::size_t k = 0; k < runs[a].size(); ++k)
                    min_pointwise = std::min(min_pointwise, std::hypot(runs[a][k][1] - runs[b][k][1],
                                                                       runs[a][k][2] - runs[b][k][2]));
                for (std::size_t i = 0; i < runs[a].size(); i += 4)
                    for (std::size_t j = 0; j < runs[b].size(); j += 4)
                        set_distance = std::min(set_distance, std::hypot(runs[a][i][1] - runs[b][j][1],
                                                                         runs[a][i][2] - runs[b][j][2]));
            }
        }
        curves += std::string(" ") + preset + " curve-set " + fmt("%.1e", set_distance) + ";";
    }
    return {herm_im < 1e-12 && min_im > 1e-6 && min_pointwise > 1e-6,
            "fig2 max|Im| " + fmt("%.1e", herm_im) + " < 1e-12, fig5/6 max|Im x| >= " + fmt("%.2e", min_im) +
                ", pairwise min distance (same t) " + fmt("%.2e", min_pointwise) + " > 1e-6 [info:" + curves + "]"};
}

Outcome ac7() {
    const auto es = quantum_ss_energy(kFig7);
    const auto cond = quantum_ss_condition(kFig7, 10);
    const bool cl_fig7 = classical_ss_condition(kFig7);
    const bool cl_fig4 = classical_ss_condition(ScarfParams::pt_symmetric(2.0, 6.0, 2.0));
    const bool ok = std::abs(es.value - 4.9375) <= 1e-9 && cond.inequality_holds && !cond.quantized_n && cl_fig7 &&
                    !cl_fig4;
    return {ok, "E_s " + fmt("%.10g", es.value) + ", inequality " + (cond.inequality_holds ? "true" : "false") +
                    ", n<=10 match " + (cond.quantized_n ? std::to_string(*cond.quantized_n) : std::string("none")) +
                    ", classical(12,4)=" + (cl_fig7 ? "true" : "false") + ", classical(2,6)=" +
                    (cl_fig4 ? "true" : "false")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"AC1 classical spectral singularity at 13.7", ac1},
        {"AC2 scan shape", ac2},
        {"AC3 energy windows", ac3},
        {"AC4 closed form vs ODE oracle", ac4},
        {"AC5 factorization and algebra", ac5},
        {"AC6 realness and non-crossing presets", ac6},
        {"AC7 quantum and classical predicates", ac7},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s | %s | %.2f s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
        failed += !o.passed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

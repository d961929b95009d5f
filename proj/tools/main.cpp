#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swarmbridge/config.hpp"
#include "swarmbridge/engine.hpp"
#include "swarmbridge/harness.hpp"
#include "swarmbridge/rng.hpp"

namespace fs = std::filesystem;
using namespace swarmbridge;

namespace {

SimConfig load_config(const std::string& path) {
    if (path.empty()) return SimConfig{};
    return SimConfig::from_file(path);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

struct CheckList {
    bool all_ok = true;
    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        all_ok = all_ok && ok;
    }
};

// Gear relations composed mesh by mesh, independent of the closed forms
// in the kinematics module.
double oracle_wheel_speed(double omega1, const kinematics::GearTrain& g) {
    const double v1 = omega1 * (g.module_coeff * g.z1) / 2.0;
    const double v2 = v1;
    const double omega2 = 2.0 * v2 / (g.module_coeff * g.z2);
    const double omega3 = omega2;
    const double v3 = omega3 * (g.module_coeff * g.z3) / 2.0;
    return v3;  // v4 = v3
}

kinematics::WheelRates oracle_wheel_rates(const kinematics::BodyTwist& t,
                                          const kinematics::DrivetrainParams& d) {
    const double rim_r = t.v_x + t.omega * d.wheel_base / 2.0;
    const double rim_l = t.v_x - t.omega * d.wheel_base / 2.0;
    return {rim_r / d.wheel_radius, rim_l / d.wheel_radius};
}

double rel_err(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / scale;
}

int run_validate() {
    CheckList checks;
    const kinematics::GearTrain gear;
    const kinematics::DrivetrainParams drive;
    const double reduction = (static_cast<double>(gear.z2) * gear.z4) /
                             (static_cast<double>(gear.z1) * gear.z3);

    CounterRng rng(20240817);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double omega1 = (rng.uniform() - 0.5) * 200.0;
        worst = std::max(worst, rel_err(kinematics::wheel_speed_from_motor(omega1, gear),
                                        oracle_wheel_speed(omega1, gear)));

        const kinematics::BodyTwist t{(rng.uniform() - 0.5) * 200.0,
                                      (rng.uniform() - 0.5) * 10.0};
        const auto rates = kinematics::wheel_rates_from_twist(t, drive);
        const auto oracle_rates = oracle_wheel_rates(t, drive);
        worst = std::max(worst, rel_err(rates.right, oracle_rates.right));
        worst = std::max(worst, rel_err(rates.left, oracle_rates.left));

        // motor speed via total gear reduction of the wheel rate
        const auto consistent = kinematics::motor_speeds_from_twist_consistent(t, gear, drive);
        worst = std::max(worst, rel_err(consistent.right, oracle_rates.right * reduction));
        worst = std::max(worst, rel_err(consistent.left, oracle_rates.left * reduction));

        const auto literal = kinematics::motor_speeds_from_twist_literal(t, gear, drive);
        worst = std::max(worst,
                         rel_err(consistent.right, literal.right * drive.wheel_radius));
        worst = std::max(worst, rel_err(consistent.left, literal.left * drive.wheel_radius));
    }
    checks.check("kinematics-closed-forms-1000-random-inputs", worst <= 1e-12,
                 "max rel err " + harness::format_double(worst));
    checks.check("wheel-speed-52rad-s-is-32mm-s",
                 kinematics::wheel_speed_from_motor(52.0, gear) == 32.0);

    // consensus sanity on random swarms
    bool mean_ok = true, anti_ok = true, contract_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 8);
        std::vector<double> x;
        for (int i = 0; i < n; ++i) x.push_back((rng.uniform() - 0.5) * 600.0);
        const auto u = control::rendezvous_velocities(x);
        double sum = 0.0;
        for (double v : u) sum += v;
        mean_ok = mean_ok && std::abs(sum) <= 1e-9;
        const auto anti = control::anti_rendezvous_velocities(x);
        for (std::size_t i = 0; i < u.size(); ++i)
            anti_ok = anti_ok && anti.velocities[i] == -u[i];
        auto spread = [](const std::vector<double>& v) {
            return *std::max_element(v.begin(), v.end()) -
                   *std::min_element(v.begin(), v.end());
        };
        const double s0 = spread(x);
        std::vector<double> x1 = x;
        const double h = 0.1;
        for (std::size_t i = 0; i < x1.size(); ++i) x1[i] += h * u[i];
        contract_ok = contract_ok && (s0 == 0.0 || spread(x1) < s0);
    }
    checks.check("rendezvous-mean-preserved", mean_ok);
    checks.check("anti-rendezvous-is-negation", anti_ok);
    checks.check("rendezvous-spread-contracts", contract_ok);

    std::cout << (checks.all_ok ? "validate: all checks passed" : "validate: FAILURES")
              << "\n";
    return checks.all_ok ? 0 : 1;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir,
                  std::optional<std::uint64_t> seed, int jobs) {
    SimConfig cfg = load_config(config_path);
    if (seed) cfg.grid.base_seed = *seed;

    const auto records = harness::run_sweep(cfg.grid, cfg.crossing_params(), jobs);

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "trials.csv", harness::records_to_csv(records));
    write_file(fs::path(out_dir) / "fig8a.csv",
               harness::max_gap_csv(
                   harness::max_gap_per_count(records, 0.5, cfg.pooled_headings)));
    write_file(fs::path(out_dir) / "fig8b.csv",
               harness::gap_ratio_csv(harness::gap_ratio_per_count(
                   records, cfg.robot.body_length, 0.5, cfg.pooled_headings)));
    write_file(fs::path(out_dir) / "fig8c.csv",
               harness::heading_rate_csv(harness::success_vs_heading(records)));

    long ok = 0;
    for (const auto& r : records) ok += r.success() ? 1 : 0;
    std::cout << records.size() << " trials, " << ok << " successes; results in " << out_dir
              << "\n";
    return 0;
}

int run_scenario_cmd(const std::string& config_path, const std::string& out_dir,
                     std::optional<std::uint64_t> seed) {
    SimConfig cfg = load_config(config_path);
    const std::uint64_t s = seed.value_or(cfg.grid.base_seed);

    fs::create_directories(out_dir);
    std::ofstream traj(fs::path(out_dir) / "trajectory.csv", std::ios::binary);
    if (!traj) throw std::runtime_error("cannot write trajectory.csv");
    traj << "t,robot_id,x,y,theta,coupled_flags,phase\n";
    auto sink = [&](const engine::TrajectoryRow& row) {
        traj << harness::format_double(row.t) << ',' << row.robot_id << ','
             << harness::format_double(row.x) << ',' << harness::format_double(row.y) << ','
             << harness::format_double(row.theta) << ',' << row.coupled_flags << ','
             << row.phase << "\n";
    };

    const auto report = engine::run_scenario(cfg.scenario_config(), cfg.engine_params, s, sink);

    std::ostringstream summary;
    summary << "seed " << s << "\n";
    for (const auto& p : report.phases)
        summary << "phase " << engine::phase_name(p.phase) << " completed at "
                << harness::format_double(p.completed_at) << " s\n";
    if (report.crossing)
        summary << "crossing outcome " << statics::outcome_name(report.crossing->kind)
                << " (max tip drop " << harness::format_double(report.crossing->max_tip_drop)
                << " mm)\n";
    for (std::size_t i = 0; i < report.final_goal_distance.size(); ++i)
        summary << "robot " << i << " final goal distance "
                << harness::format_double(report.final_goal_distance[i]) << " mm\n";
    summary << (report.success ? "scenario complete\n"
                               : (report.timed_out ? "scenario timed out\n"
                                                   : "scenario failed\n"));
    write_file(fs::path(out_dir) / "report.txt", summary.str());
    std::cout << summary.str();
    return report.success ? 0 : 3;
}

int run_hooks_cmd(const std::string& config_path, const std::string& out_dir) {
    SimConfig cfg = load_config(config_path);
    const auto reports =
        harness::characterize_hooks({1.0, 1.5, 2.0}, 3, cfg.robot, cfg.pitch_cap);
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "fig7.csv", harness::hook_report_csv(reports));
    std::cout << harness::hook_report_csv(reports);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Passive-coupling swarm simulator: consensus driving, knob/hook "
                 "coupling and quasi-static gap crossing"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    int jobs = 1;

    auto* sweep = app.add_subcommand("sweep", "run the gap-crossing parameter sweep");
    sweep->add_option("--config", config_path, "config file (key = value)");
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--seed", seed, "base seed override");
    sweep->add_option("--jobs", jobs, "worker threads");

    auto* scenario =
        app.add_subcommand("scenario", "couple, cross the gap, decouple, visit goals");
    scenario->add_option("--config", config_path, "config file (key = value)");
    scenario->add_option("--out", out_dir, "output directory")->required();
    scenario->add_option("--seed", seed, "seed override");

    auto* hooks = app.add_subcommand("characterize-hooks",
                                     "tilt angles and lock status per hook width");
    hooks->add_option("--config", config_path, "config file (key = value)");
    hooks->add_option("--out", out_dir, "output directory")->required();

    auto* validate =
        app.add_subcommand("validate", "closed-form kinematics and consensus self-checks");
    (void)validate;

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep_cmd(config_path, out_dir, seed, jobs);
        if (scenario->parsed()) return run_scenario_cmd(config_path, out_dir, seed);
        if (hooks->parsed()) return run_hooks_cmd(config_path, out_dir);
        if (validate->parsed()) return run_validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swarmbridge/control.hpp"
#include "swarmbridge/coupling.hpp"
#include "swarmbridge/rng.hpp"
#include "swarmbridge/statics.hpp"

namespace swarmbridge::engine {

struct EngineParams {
    double dt = 0.02;              // s, fixed tick
    double twist_noise_sigma = 0.02;  // multiplicative actuation noise
    double cruise_speed = 30.0;    // mm/s commanded during gap approach
    double contact_slack = 0.1;    // mm of tolerated overlap
};

struct RobotState {
    int id = 0;
    kinematics::Pose pose;
    bool wall_contact = false;
};

// Single simulation world: robots, coupling graph, platforms, one
// seedable noise stream per robot. One World is single-threaded; many
// Worlds can run in parallel.
class World {
public:
    World(int n_robots, const RobotParams& params, const statics::Environment& env,
          const EngineParams& engine, std::uint64_t seed,
          const coupling::CouplingTolerances& tol = {});

    // One tick: command -> multiplicative actuation noise -> exact
    // unicycle integration -> contact resolution (wall, robot-robot along
    // the x axis) -> coupling attempts on aligned pairs.
    void step(const std::vector<kinematics::BodyTwist>& commands);

    std::vector<double> x_positions() const;
    const std::vector<RobotState>& robots() const { return robots_; }
    std::vector<RobotState>& robots() { return robots_; }
    const coupling::CouplingGraph& graph() const { return graph_; }
    coupling::CouplingGraph& graph() { return graph_; }
    const statics::Environment& environment() const { return env_; }
    const RobotParams& params() const { return params_; }
    const EngineParams& engine_params() const { return engine_; }
    double time() const { return time_; }

    void set_wall(const control::Wall& wall) { wall_ = wall; }
    const std::optional<control::Wall>& wall() const { return wall_; }

    // advances the clock without integrating (the statics march owns the
    // poses while the chain spans the gap)
    void advance_time() { time_ += engine_.dt; }

    CounterRng& scenario_rng() { return scenario_rng_; }
    std::uint64_t seed() const { return seed_; }

private:
    void resolve_wall_contact(RobotState& r);
    void resolve_robot_contacts();
    void attempt_couplings();

    RobotParams params_;
    statics::Environment env_;
    EngineParams engine_;
    coupling::CouplingTolerances couple_tol_;
    std::vector<RobotState> robots_;
    coupling::CouplingGraph graph_;
    std::optional<control::Wall> wall_;
    std::vector<CounterRng> robot_rng_;
    CounterRng scenario_rng_;
    std::uint64_t seed_;
    double time_ = 0.0;
};

enum class Phase : std::uint8_t { Rendezvous, CrossGap, AntiRendezvous, GoToGoals, Done };

const char* phase_name(Phase p);

struct ScenarioConfig {
    int n_robots = 3;
    statics::Environment env{60.0, 6.0, 0.0};
    double max_time = 120.0;  // s
    double decouple_distance = 80.0;  // mm of adjacent spacing that ends anti-rendezvous
    double reach_tol = 2.0;           // mm tolerance on coupled spacing
    double push_speed = 15.0;         // mm/s for wall alignment
    control::GoToGoalGains gains;
    coupling::CouplingTolerances couple_tol;
    statics::CrossingParams crossing;

    // empty = auto layout: scattered line on the start platform, goals
    // spread on the target platform
    std::vector<kinematics::Pose> start_poses;
    std::vector<std::pair<double, double>> goals;
};

struct PhaseRecord {
    Phase phase = Phase::Done;
    double completed_at = -1.0;  // s, -1 = never completed
};

struct ScenarioReport {
    std::vector<PhaseRecord> phases;
    std::optional<statics::CrossingOutcome> crossing;
    std::vector<double> final_goal_distance;  // mm per robot
    bool timed_out = false;
    bool success = false;
};

struct TrajectoryRow {
    double t = 0.0;
    int robot_id = 0;
    double x = 0.0, y = 0.0, theta = 0.0;
    std::string coupled_flags;  // FBLR mask, '-' for free faces
    const char* phase = "";
};

using TrajectorySink = std::function<void(const TrajectoryRow&)>;

// Scripted couple -> cross -> decouple -> disperse run. Deterministic for
// a fixed (config, seed); the trajectory sink sees every robot each tick.
ScenarioReport run_scenario(const ScenarioConfig& config, const EngineParams& engine,
                            std::uint64_t seed, const TrajectorySink& sink = {});

}  // namespace swarmbridge::engine

#pragma once

#include <iosfwd>
#include <string>

#include "swarmbridge/engine.hpp"
#include "swarmbridge/harness.hpp"

namespace swarmbridge {

// Flat `key = value` configuration, '#' comments, UTF-8. Every default in
// the simulator lives here; the CLI applies file values first and flag
// overrides second. Unknown keys are rejected.
struct SimConfig {
    RobotParams robot;
    coupling::CouplingTolerances couple_tol;

    // statics / crossing
    double march_step = 1.0;
    double pitch_cap = 0.6;
    double climb_threshold = 5.0;
    double break_drop_threshold = 15.0;
    double tumble_pitch_threshold = 0.45;
    double advance_noise_frac = 0.02;
    double lateral_noise_sigma = 0.2;

    // engine
    engine::EngineParams engine_params;

    // controllers
    control::GoToGoalGains gains;
    double push_speed = 15.0;
    double decouple_distance = 80.0;
    double reach_tol = 2.0;

    // scenario
    statics::Environment env{60.0, 6.0, 0.0};
    int scenario_robots = 3;
    double scenario_max_time = 120.0;

    // sweep
    harness::SweepGrid grid;
    bool pooled_headings = false;

    statics::CrossingParams crossing_params() const;
    engine::ScenarioConfig scenario_config() const;

    // parse one key; throws InvalidConfig on unknown keys or bad values
    void set(const std::string& key, const std::string& value);

    static SimConfig from_file(const std::string& path);
    static SimConfig from_stream(std::istream& in);

    void validate() const;
};

}  // namespace swarmbridge

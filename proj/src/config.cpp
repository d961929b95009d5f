#include "swarmbridge/config.hpp"

#include <fstream>
#include <sstream>

#include "swarmbridge/errors.hpp"

namespace swarmbridge {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("bad numeric value for " + key + ": '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(v);
    if (v != i) throw InvalidConfig("expected integer for " + key + ": '" + value + "'");
    return i;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("bad seed value for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw InvalidConfig("expected boolean for " + key + ": '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw InvalidConfig("empty list for " + key);
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (double v : parse_list(key, value)) {
        const int i = static_cast<int>(v);
        if (v != i) throw InvalidConfig("expected integers for " + key);
        out.push_back(i);
    }
    return out;
}

}  // namespace

statics::CrossingParams SimConfig::crossing_params() const {
    statics::CrossingParams p;
    p.robot = robot;
    p.march_step = march_step;
    p.pitch_cap = pitch_cap;
    p.climb_threshold = climb_threshold;
    p.break_drop_threshold = break_drop_threshold;
    p.tumble_pitch_threshold = tumble_pitch_threshold;
    p.advance_noise_frac = advance_noise_frac;
    p.lateral_noise_sigma = lateral_noise_sigma;
    return p;
}

engine::ScenarioConfig SimConfig::scenario_config() const {
    engine::ScenarioConfig s;
    s.n_robots = scenario_robots;
    s.env = env;
    s.max_time = scenario_max_time;
    s.decouple_distance = decouple_distance;
    s.reach_tol = reach_tol;
    s.push_speed = push_speed;
    s.gains = gains;
    s.couple_tol = couple_tol;
    s.crossing = crossing_params();
    return s;
}

void SimConfig::set(const std::string& key, const std::string& value) {
    if (key == "robot.body_length") robot.body_length = parse_double(key, value);
    else if (key == "robot.body_width") robot.body_width = parse_double(key, value);
    else if (key == "robot.body_height") robot.body_height = parse_double(key, value);
    else if (key == "robot.mass") robot.mass = parse_double(key, value);
    else if (key == "gear.module") robot.gear.module_coeff = parse_double(key, value);
    else if (key == "gear.z1") robot.gear.z1 = parse_int(key, value);
    else if (key == "gear.z2") robot.gear.z2 = parse_int(key, value);
    else if (key == "gear.z3") robot.gear.z3 = parse_int(key, value);
    else if (key == "gear.z4") robot.gear.z4 = parse_int(key, value);
    else if (key == "drive.wheel_base") robot.drive.wheel_base = parse_double(key, value);
    else if (key == "drive.wheel_radius") robot.drive.wheel_radius = parse_double(key, value);
    else if (key == "drive.max_motor_speed")
        robot.drive.max_motor_speed = parse_double(key, value);
    else if (key == "knob.radius") robot.knob.knob_radius = parse_double(key, value);
    else if (key == "knob.depth") robot.knob.knob_depth = parse_double(key, value);
    else if (key == "knob.hook_width") robot.knob.hook_width = parse_double(key, value);
    else if (key == "knob.height") robot.knob.knob_height = parse_double(key, value);
    else if (key == "knob.hole_height") robot.knob.hole_height = parse_double(key, value);
    else if (key == "knob.wall_thickness")
        robot.knob.wall_thickness = parse_double(key, value);
    else if (key == "knob.friction_tilt") robot.knob.friction_tilt = parse_double(key, value);
    else if (key == "knob.slip_threshold")
        robot.knob.slip_threshold = parse_double(key, value);
    else if (key == "couple.gap_tol") couple_tol.gap = parse_double(key, value);
    else if (key == "couple.lateral_tol") couple_tol.lateral = parse_double(key, value);
    else if (key == "couple.heading_tol") couple_tol.heading = parse_double(key, value);
    else if (key == "statics.march_step") march_step = parse_double(key, value);
    else if (key == "statics.pitch_cap") pitch_cap = parse_double(key, value);
    else if (key == "statics.climb_threshold") climb_threshold = parse_double(key, value);
    else if (key == "statics.break_drop_threshold")
        break_drop_threshold = parse_double(key, value);
    else if (key == "statics.tumble_pitch_threshold")
        tumble_pitch_threshold = parse_double(key, value);
    else if (key == "noise.advance_frac") advance_noise_frac = parse_double(key, value);
    else if (key == "noise.lateral_sigma") lateral_noise_sigma = parse_double(key, value);
    else if (key == "noise.twist_sigma")
        engine_params.twist_noise_sigma = parse_double(key, value);
    else if (key == "engine.dt") engine_params.dt = parse_double(key, value);
    else if (key == "engine.cruise_speed")
        engine_params.cruise_speed = parse_double(key, value);
    else if (key == "engine.contact_slack")
        engine_params.contact_slack = parse_double(key, value);
    else if (key == "control.k_v") gains.k_v = parse_double(key, value);
    else if (key == "control.v_max") gains.v_max = parse_double(key, value);
    else if (key == "control.k_omega") gains.k_omega = parse_double(key, value);
    else if (key == "control.goal_tol") gains.goal_tol = parse_double(key, value);
    else if (key == "control.push_speed") push_speed = parse_double(key, value);
    else if (key == "control.decouple_distance")
        decouple_distance = parse_double(key, value);
    else if (key == "control.reach_tol") reach_tol = parse_double(key, value);
    else if (key == "env.gap_width") env.gap_width = parse_double(key, value);
    else if (key == "env.height_diff") env.height_diff = parse_double(key, value);
    else if (key == "env.start_edge_x") env.start_edge_x = parse_double(key, value);
    else if (key == "scenario.robots") scenario_robots = parse_int(key, value);
    else if (key == "scenario.max_time") scenario_max_time = parse_double(key, value);
    else if (key == "sweep.robot_counts") grid.robot_counts = parse_int_list(key, value);
    else if (key == "sweep.gaps") grid.gaps_mm = parse_list(key, value);
    else if (key == "sweep.headings") grid.headings_deg = parse_list(key, value);
    else if (key == "sweep.height_diffs") grid.height_diffs_mm = parse_list(key, value);
    else if (key == "sweep.reps") grid.reps = parse_int(key, value);
    else if (key == "sweep.seed") grid.base_seed = parse_u64(key, value);
    else if (key == "sweep.pooled_headings") pooled_headings = parse_bool(key, value);
    else throw InvalidConfig("unknown config key: " + key);
}

SimConfig SimConfig::from_stream(std::istream& in) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

SimConfig SimConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file: " + path);
    return from_stream(in);
}

void SimConfig::validate() const {
    robot.validate();
    env.validate();
    grid.validate();
    crossing_params().validate();
    if (engine_params.dt <= 0) throw InvalidConfig("engine.dt must be positive");
    if (scenario_robots < 1) throw InvalidConfig("scenario.robots must be >= 1");
}

}  // namespace swarmbridge

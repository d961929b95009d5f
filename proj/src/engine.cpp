#include "swarmbridge/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "swarmbridge/errors.hpp"

namespace swarmbridge::engine {

World::World(int n_robots, const RobotParams& params, const statics::Environment& env,
             const EngineParams& engine, std::uint64_t seed,
             const coupling::CouplingTolerances& tol)
    : params_(params),
      env_(env),
      engine_(engine),
      couple_tol_(tol),
      scenario_rng_(seed, 0x7363656eull),  // "scen"
      seed_(seed) {
    params_.validate();
    for (int i = 0; i < n_robots; ++i) {
        robots_.push_back({i, {}, false});
        graph_.add_robot(i);
        robot_rng_.emplace_back(seed, 100 + static_cast<std::uint64_t>(i));
    }
}

std::vector<double> World::x_positions() const {
    std::vector<double> xs;
    xs.reserve(robots_.size());
    for (const auto& r : robots_) xs.push_back(r.pose.x);
    return xs;
}

void World::step(const std::vector<kinematics::BodyTwist>& commands) {
    if (commands.size() != robots_.size())
        throw std::invalid_argument("one command per robot required");

    for (std::size_t i = 0; i < robots_.size(); ++i) {
        kinematics::BodyTwist t = commands[i];
        if (engine_.twist_noise_sigma > 0.0) {
            t.v_x *= 1.0 + engine_.twist_noise_sigma * robot_rng_[i].normal();
            t.omega *= 1.0 + engine_.twist_noise_sigma * robot_rng_[i].normal();
        }
        t = kinematics::clamp_twist_to_motor_limit(t, params_.gear, params_.drive);
        robots_[i].pose = kinematics::integrate_unicycle(robots_[i].pose, t, engine_.dt);
    }

    for (auto& r : robots_) resolve_wall_contact(r);
    resolve_robot_contacts();
    attempt_couplings();
    time_ += engine_.dt;
}

void World::resolve_wall_contact(RobotState& r) {
    if (!wall_) {
        r.wall_contact = false;
        return;
    }
    const double face = params_.half_length();
    const double d = wall_->distance(r.pose.x, r.pose.y);
    if (d <= face) {
        // flush face contact: position projected out, heading collapsed to
        // the wall normal axis
        r.pose.x += (face - d) * wall_->normal_x;
        r.pose.y += (face - d) * wall_->normal_y;
        const double axis = std::atan2(wall_->normal_y, wall_->normal_x);
        const double err = kinematics::normalize_angle(r.pose.theta - axis);
        r.pose.theta = std::abs(err) <= M_PI / 2.0
                           ? axis
                           : kinematics::normalize_angle(axis + M_PI);
        r.wall_contact = true;
    } else {
        r.wall_contact = d <= face + 1.0;  // grazing counts for the controller
    }
}

void World::resolve_robot_contacts() {
    const double body = params_.body_length;

    // platform edge guard: an uncoupled robot will not drive its wheels
    // off an edge on its own
    for (auto& r : robots_) {
        bool coupled = false;
        for (const auto& e : graph_.edges()) {
            if (e.robot_i == r.id || e.robot_j == r.id) coupled = true;
        }
        if (coupled) continue;
        if (r.pose.x > env_.start_edge_x && r.pose.x < env_.far_edge_x()) {
            const double to_start = r.pose.x - env_.start_edge_x;
            const double to_far = env_.far_edge_x() - r.pose.x;
            r.pose.x = to_start < to_far ? env_.start_edge_x : env_.far_edge_x();
        }
    }

    std::vector<std::size_t> order(robots_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return robots_[a].pose.x < robots_[b].pose.x; });

    // hard stop at body-length spacing, resolved by position projection;
    // a wall-pinned robot does not yield
    for (int sweep = 0; sweep < 4; ++sweep) {
        bool moved = false;
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            RobotState& a = robots_[order[k]];
            RobotState& b = robots_[order[k + 1]];
            if (std::abs(a.pose.y - b.pose.y) >= params_.body_width) continue;
            const double dx = b.pose.x - a.pose.x;
            if (dx >= body) continue;
            const double push = body - dx;
            if (a.wall_contact && !b.wall_contact) {
                b.pose.x += push;
            } else if (b.wall_contact && !a.wall_contact) {
                a.pose.x -= push;
            } else {
                a.pose.x -= 0.5 * push;
                b.pose.x += 0.5 * push;
            }
            moved = true;
        }
        if (!moved) break;
    }
}

void World::attempt_couplings() {
    const double body = params_.body_length;
    std::vector<std::size_t> order(robots_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return robots_[a].pose.x < robots_[b].pose.x; });

    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const RobotState& a = robots_[order[k]];
        const RobotState& b = robots_[order[k + 1]];
        if (graph_.edge_between(a.id, b.id)) continue;
        if (std::abs((b.pose.x - a.pose.x) - body) > couple_tol_.gap) continue;
        if (std::abs(b.pose.y - a.pose.y) > couple_tol_.lateral) continue;
        // a is behind b: a's front face mates b's back face
        if (graph_.face_occupied(a.id, coupling::Face::Front) ||
            graph_.face_occupied(b.id, coupling::Face::Back))
            continue;
        graph_.try_couple(a.id, b.id, a.pose, b.pose, params_.knob, body, couple_tol_);
    }
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Rendezvous: return "rendezvous";
        case Phase::CrossGap: return "cross_gap";
        case Phase::AntiRendezvous: return "anti_rendezvous";
        case Phase::GoToGoals: return "go_to_goals";
        case Phase::Done: return "done";
    }
    return "?";
}

namespace {

std::string coupled_mask(const coupling::CouplingGraph& g, int robot) {
    std::string m = "----";
    if (g.face_occupied(robot, coupling::Face::Front)) m[0] = 'F';
    if (g.face_occupied(robot, coupling::Face::Back)) m[1] = 'B';
    if (g.face_occupied(robot, coupling::Face::Left)) m[2] = 'L';
    if (g.face_occupied(robot, coupling::Face::Right)) m[3] = 'R';
    return m;
}

double clamp_speed(double v, double v_max) { return std::clamp(v, -v_max, v_max); }

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config, const EngineParams& engine,
                            std::uint64_t seed, const TrajectorySink& sink) {
    const int n = config.n_robots;
    if (n < 1) throw std::invalid_argument("scenario needs at least one robot");

    ScenarioConfig cfg = config;
    const double body = cfg.crossing.robot.body_length;
    const double start_edge = cfg.env.start_edge_x;
    const double wall_x = start_edge - (n * body + 250.0);

    if (cfg.start_poses.empty()) {
        for (int i = 0; i < n; ++i)
            cfg.start_poses.push_back(
                {wall_x + cfg.crossing.robot.half_length() + 40.0 + i * 90.0, 0.0, 0.0});
    }
    if (cfg.goals.empty()) {
        for (int i = 0; i < n; ++i)
            cfg.goals.push_back({cfg.env.far_edge_x() + 200.0,
                                 (i - 0.5 * (n - 1)) * 100.0});
    }
    if (static_cast<int>(cfg.start_poses.size()) != n ||
        static_cast<int>(cfg.goals.size()) != n)
        throw std::invalid_argument("need one start pose and one goal per robot");

    World world(n, cfg.crossing.robot, cfg.env, engine, seed, cfg.couple_tol);
    world.set_wall({wall_x, 0.0, 1.0, 0.0});
    for (int i = 0; i < n; ++i) world.robots()[i].pose = cfg.start_poses[i];

    ScenarioReport report;
    Phase phase = Phase::Rendezvous;
    std::optional<statics::GapCrossSolver> solver;
    std::vector<int> chain_ids;  // world ids, lead first, while crossing
    bool chain_landed = false;   // crossing done, clearing the far edge
    const int wall_robot = 0;    // rearmost starts nearest the wall

    // room the trailing robot needs behind it before the swarm spreads out
    const double clear_margin =
        0.5 * (cfg.decouple_distance - body) * (n - 1) + 20.0;

    auto log_tick = [&]() {
        if (!sink) return;
        for (const auto& r : world.robots()) {
            sink({world.time(), r.id, r.pose.x, r.pose.y, r.pose.theta,
                  coupled_mask(world.graph(), r.id), phase_name(phase)});
        }
    };

    auto complete_phase = [&](Phase p) {
        report.phases.push_back({p, world.time()});
        phase = static_cast<Phase>(static_cast<int>(p) + 1);
    };

    log_tick();
    const long max_ticks = static_cast<long>(cfg.max_time / engine.dt);
    for (long tick = 0; tick < max_ticks && phase != Phase::Done; ++tick) {
        std::vector<kinematics::BodyTwist> cmds(n);

        switch (phase) {
            case Phase::Rendezvous: {
                if (n == 1) {
                    complete_phase(Phase::Rendezvous);
                    break;
                }
                const auto xs = world.x_positions();
                const auto u = control::rendezvous_velocities(xs);
                for (int i = 0; i < n; ++i) {
                    if (i == wall_robot && world.wall()) {
                        cmds[i] = control::wall_align(world.robots()[i].pose, *world.wall(),
                                                      cfg.push_speed,
                                                      world.robots()[i].wall_contact);
                    } else {
                        cmds[i] = {clamp_speed(u[i], cfg.gains.v_max),
                                   cfg.gains.k_omega * kinematics::normalize_angle(
                                                           -world.robots()[i].pose.theta)};
                    }
                }
                world.step(cmds);
                if (world.graph().edges().size() == static_cast<std::size_t>(n - 1) &&
                    control::coupling_reached(world.x_positions(), body, cfg.reach_tol)) {
                    complete_phase(Phase::Rendezvous);
                }
                break;
            }

            case Phase::CrossGap: {
                if (chain_landed) {
                    // cruise until the trailing robot has spreading room
                    const auto xs = world.x_positions();
                    const double trail_x = *std::min_element(xs.begin(), xs.end());
                    if (trail_x >= cfg.env.far_edge_x() + clear_margin) {
                        complete_phase(Phase::CrossGap);
                        break;
                    }
                    for (int i = 0; i < n; ++i)
                        cmds[i] = {engine.cruise_speed,
                                   cfg.gains.k_omega * kinematics::normalize_angle(
                                                           -world.robots()[i].pose.theta)};
                    world.step(cmds);
                    break;
                }
                if (!solver) {
                    // approach: the coupled chain cruises toward the gap
                    const auto xs = world.x_positions();
                    const double lead_x = *std::max_element(xs.begin(), xs.end());
                    if (lead_x + cfg.crossing.robot.half_length() < start_edge) {
                        for (int i = 0; i < n; ++i)
                            cmds[i] = {engine.cruise_speed,
                                       cfg.gains.k_omega * kinematics::normalize_angle(
                                                               -world.robots()[i].pose.theta)};
                        world.step(cmds);
                        break;
                    }
                    chain_ids = n >= 2 ? world.graph().chain_order()
                                       : std::vector<int>{world.robots()[0].id};
                    solver.emplace(n, cfg.env, 0.0, cfg.crossing, seed);
                }
                // the quasi-static march owns the chain while any robot
                // overhangs the gap
                solver->step(engine.cruise_speed * engine.dt);
                const auto poses = solver->poses();
                for (int k = 0; k < n; ++k) {
                    auto& r = world.robots()[chain_ids[k]];
                    r.pose = poses[k];
                }
                world.advance_time();
                if (solver->finished()) {
                    const auto out = solver->outcome();
                    report.crossing = out;
                    if (out.kind == statics::OutcomeKind::Success) {
                        chain_landed = true;
                    } else {
                        phase = Phase::Done;  // failed scenario, report and halt
                    }
                }
                break;
            }

            case Phase::AntiRendezvous: {
                if (n == 1) {
                    complete_phase(Phase::AntiRendezvous);
                    break;
                }
                // knobs slide free on flat ground; separate all joints once
                while (!world.graph().edges().empty()) {
                    const auto e = world.graph().edges().front();
                    world.graph().decouple(e.robot_i, e.robot_j, true, true);
                }
                const auto xs = world.x_positions();
                const auto anti = control::anti_rendezvous_velocities(xs);
                for (int i = 0; i < n; ++i) {
                    cmds[i] = {clamp_speed(anti.velocities[i], cfg.gains.v_max),
                               cfg.gains.k_omega * kinematics::normalize_angle(
                                                       -world.robots()[i].pose.theta)};
                }
                world.step(cmds);
                auto sorted = world.x_positions();
                std::sort(sorted.begin(), sorted.end());
                double min_gap = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
                    min_gap = std::min(min_gap, sorted[i + 1] - sorted[i]);
                if (min_gap >= cfg.decouple_distance) complete_phase(Phase::AntiRendezvous);
                break;
            }

            case Phase::GoToGoals: {
                bool all_there = true;
                for (int i = 0; i < n; ++i) {
                    cmds[i] = control::go_to_goal(world.robots()[i].pose, cfg.goals[i].first,
                                                  cfg.goals[i].second, cfg.gains);
                    const double d = std::hypot(cfg.goals[i].first - world.robots()[i].pose.x,
                                                cfg.goals[i].second - world.robots()[i].pose.y);
                    if (d > cfg.gains.goal_tol) all_there = false;
                }
                if (all_there) {
                    complete_phase(Phase::GoToGoals);
                    break;
                }
                world.step(cmds);
                break;
            }

            case Phase::Done:
                break;
        }
        log_tick();
    }

    report.timed_out = phase != Phase::Done;
    for (int i = 0; i < n; ++i) {
        report.final_goal_distance.push_back(
            std::hypot(cfg.goals[i].first - world.robots()[i].pose.x,
                       cfg.goals[i].second - world.robots()[i].pose.y));
    }
    report.success = report.phases.size() == 4;
    return report;
}

}  // namespace swarmbridge::engine

#include "swarmbridge/statics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swarmbridge/errors.hpp"

namespace swarmbridge::statics {

namespace {
constexpr double kMaxHeading = M_PI / 3.0;
}

void Environment::validate() const {
    if (gap_width <= 0.0) throw std::invalid_argument("gap_width must be positive");
    if (height_diff < 0.0) throw std::invalid_argument("height_diff must be >= 0");
}

Support support_at(double center_x, const Environment& env) {
    if (center_x < env.start_edge_x) return Support::OnStart;
    if (center_x >= env.far_edge_x()) return Support::OnTarget;
    return Support::OverGap;
}

ChainConfiguration make_chain(int n, const kinematics::Pose& lead, double body_length,
                              double joint_tilt, const Environment& env) {
    ChainConfiguration chain;
    const double c = std::cos(lead.theta), s = std::sin(lead.theta);
    for (int i = 0; i < n; ++i) {
        chain.robot_ids.push_back(i);
        kinematics::Pose p{lead.x - i * body_length * c, lead.y - i * body_length * s,
                           lead.theta};
        chain.poses.push_back(p);
        chain.support.push_back(support_at(p.x, env));
    }
    for (int i = 0; i + 1 < n; ++i) chain.joint_tilts.push_back(joint_tilt);
    return chain;
}

const char* outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Success: return "Success";
        case OutcomeKind::StallAtFarPlatform: return "StallAtFarPlatform";
        case OutcomeKind::ConnectionBreak: return "ConnectionBreak";
        case OutcomeKind::Tumble: return "Tumble";
        case OutcomeKind::FallInGap: return "FallInGap";
    }
    return "?";
}

OutcomeKind outcome_from_name(const std::string& name) {
    for (OutcomeKind k : {OutcomeKind::Success, OutcomeKind::StallAtFarPlatform,
                          OutcomeKind::ConnectionBreak, OutcomeKind::Tumble,
                          OutcomeKind::FallInGap}) {
        if (name == outcome_name(k)) return k;
    }
    throw std::invalid_argument("unknown outcome: " + name);
}

ComCheck com_supported(const ChainConfiguration& chain, const Environment& env) {
    if (chain.poses.empty()) throw std::invalid_argument("empty chain");
    double com_x = 0.0;
    bool any_target = false;
    for (std::size_t i = 0; i < chain.poses.size(); ++i) {
        com_x += chain.poses[i].x;  // equal masses
        if (chain.support[i] == Support::OnTarget) any_target = true;
    }
    com_x /= static_cast<double>(chain.poses.size());
    const double margin = env.start_edge_x - com_x;
    return {margin >= 0.0 || any_target, margin};
}

double overhang_tip_drop(double s, double joint_tilt, double body_length, double pitch_cap) {
    double drop = 0.0;
    int k = 1;
    // walk outward from the pivot in body-length segments
    while (s > 0.0) {
        const double seg = std::min(s, body_length);
        const double pitch = std::min(k * joint_tilt, pitch_cap);
        drop += seg * std::sin(pitch);
        s -= seg;
        ++k;
    }
    return drop;
}

TiltProfile tilt_profile(const ChainConfiguration& chain, const Environment& env,
                         double joint_tilt, double body_length, double pitch_cap) {
    const std::size_t n = chain.size();
    if (n == 0) throw std::invalid_argument("empty chain");

    // overhanging robots form a prefix of the chain (lead first)
    std::size_t overhang = 0;
    while (overhang < n && chain.support[overhang] == Support::OverGap) ++overhang;
    if (overhang == 0) throw NoOverhang("chain is fully supported");

    TiltProfile out;
    out.pitch.resize(n, 0.0);
    for (std::size_t i = 0; i < overhang; ++i) {
        const std::size_t k = overhang - i;  // 1 at the edge, largest at the lead
        out.pitch[i] = std::min(static_cast<double>(k) * joint_tilt, pitch_cap);
    }

    // pivot: the start edge, or the front face of the last supported robot
    // when that face protrudes past the edge (the supported body carries
    // the joint flat to there).
    const double theta = chain.poses.front().theta;
    const double c = std::max(std::cos(theta), 0.5);
    double pivot = env.start_edge_x;
    if (overhang < n && chain.support[overhang] == Support::OnStart) {
        const double front = chain.poses[overhang].x + 0.5 * body_length * c;
        pivot = std::max(pivot, front);
    }
    const double tip = chain.poses.front().x + 0.5 * body_length * c;
    const double s = std::max(0.0, tip - pivot) / c;
    out.tip_drop = overhang_tip_drop(s, joint_tilt, body_length, pitch_cap);
    return out;
}

EffectiveGap effective_gap(const Environment& env, double heading, double body_depth,
                           double body_width) {
    if (heading < 0.0 || heading >= kMaxHeading)
        throw std::invalid_argument("heading must be in [0, pi/3)");
    const double c = std::cos(heading), s = std::abs(std::sin(heading));
    return {
        env.gap_width / c,
        0.5 * body_width * s + 0.5 * body_depth * c - 0.5 * body_depth,
    };
}

bool landing_feasible(double tip_drop, const Environment& env, double climb_threshold) {
    return tip_drop - env.height_diff <= climb_threshold;
}

void CrossingParams::validate() const {
    robot.validate();
    if (march_step <= 0.0) throw InvalidConfig("march_step must be positive");
    if (pitch_cap <= 0.0) throw InvalidConfig("pitch_cap must be positive");
    if (climb_threshold < 0.0 || break_drop_threshold < 0.0 || tumble_pitch_threshold < 0.0)
        throw InvalidConfig("thresholds must be >= 0");
    if (advance_noise_frac < 0.0 || lateral_noise_sigma < 0.0)
        throw InvalidConfig("noise sigmas must be >= 0");
}

GapCrossSolver::GapCrossSolver(int n_robots, const Environment& env, double heading,
                               const CrossingParams& params, std::uint64_t seed)
    : n_(n_robots),
      env_(env),
      heading_base_(heading),
      params_(params),
      rng_(seed, 0x63726f7373ull),  // "cross" stream
      joint_tilt_(coupling::effective_joint_tilt(params.robot.knob)),
      heading_eff_(heading),
      min_margin_(env.start_edge_x) {
    if (n_ < 1) throw std::invalid_argument("need at least one robot");
    if (heading < 0.0 || heading >= kMaxHeading)
        throw std::invalid_argument("heading must be in [0, pi/3)");
    env_.validate();
    params_.validate();
    // lead tip at the start edge
    lead_x_ = env_.start_edge_x - support_reach(heading_base_);
    const double spacing = params_.robot.body_length * std::cos(heading_base_);
    min_margin_ = env_.start_edge_x - (lead_x_ - 0.5 * (n_ - 1) * spacing);
}

double GapCrossSolver::support_reach(double heading) const {
    // A chain reaches the far side with its leading corner; a lone robot
    // has nothing to anchor a corner touch, so only the wheel line counts.
    const double c = std::cos(heading);
    double r = params_.robot.half_length() * c;
    if (n_ >= 2) r += params_.robot.half_width() * std::abs(std::sin(heading));
    return r;
}

void GapCrossSolver::classify(OutcomeKind kind) {
    outcome_ = kind;
}

double GapCrossSolver::chain_pivot(double lead_x, double cos_h) const {
    // start edge, or the front face of the last robot still wheel-supported
    // on the start platform (its rigid body carries the joint flat to there)
    const double spacing = params_.robot.body_length * cos_h;
    double pivot = env_.start_edge_x;
    for (int i = 0; i < n_; ++i) {
        const double x_i = lead_x - i * spacing;
        if (support_at(x_i, env_) == Support::OnStart) {
            pivot = std::max(pivot, x_i + params_.robot.half_length() * cos_h);
            break;
        }
    }
    return pivot;
}

bool GapCrossSolver::step(double step_mm) {
    if (outcome_) return false;
    if (step_mm <= 0.0) throw InvalidConfig("march step must be positive");

    double adv = step_mm;
    if (params_.advance_noise_frac > 0.0)
        adv = std::max(0.0, step_mm * (1.0 + params_.advance_noise_frac * rng_.normal()));
    if (params_.lateral_noise_sigma > 0.0) {
        // lateral wheel slip realized as a heading random walk
        drift_ += rng_.normal() * params_.lateral_noise_sigma / params_.robot.body_length;
    }
    heading_eff_ = std::clamp(heading_base_ + drift_, -(kMaxHeading - 1e-3), kMaxHeading - 1e-3);

    const double c = std::cos(heading_eff_);
    lead_x_ += adv * c;
    lead_y_ += adv * std::sin(heading_eff_);

    const double body = params_.robot.body_length;
    const double half = params_.robot.half_length();
    const double spacing = body * c;

    if (landed_) {
        const double trail_x = lead_x_ - (n_ - 1) * spacing;
        if (trail_x >= env_.far_edge_x()) classify(OutcomeKind::Success);
        return !outcome_.has_value();
    }

    const double reach = support_reach(heading_eff_);
    // lead position at which the tip touches the far side, and at which
    // the combined center of mass leaves the start platform
    const double contact_at = env_.far_edge_x() - reach;
    const double fall_at = env_.start_edge_x + 0.5 * (n_ - 1) * spacing;

    if (lead_x_ >= contact_at && contact_at <= fall_at) {
        // touch happens no later than balance loss; evaluate the landing
        // at the exact contact position
        lead_x_ = contact_at;
        if (n_ == 1) {
            const double diag =
                half * c + params_.robot.half_width() * std::abs(std::sin(heading_eff_));
            const double landing_pitch =
                std::asin(std::clamp(env_.height_diff / std::max(diag, 1e-9), 0.0, 1.0));
            max_tip_drop_ = std::max(max_tip_drop_, diag * std::sin(landing_pitch));
            if (landing_pitch > params_.tumble_pitch_threshold) {
                classify(OutcomeKind::Tumble);
            } else {
                landed_ = true;
            }
            return !outcome_.has_value();
        }

        const double pivot = chain_pivot(lead_x_, c);
        const double s = std::max(0.0, env_.far_edge_x() - pivot) / c;
        const double drop = overhang_tip_drop(s, joint_tilt_, body, params_.pitch_cap);
        max_tip_drop_ = std::max(max_tip_drop_, drop);

        // oblique landings derate what the wheels can mount and what the
        // joints survive
        if (!landing_feasible(drop, env_, params_.climb_threshold * c)) {
            classify(OutcomeKind::StallAtFarPlatform);
        } else if (drop > params_.break_drop_threshold * c) {
            classify(OutcomeKind::ConnectionBreak);
        } else {
            landed_ = true;
        }
        return !outcome_.has_value();
    }

    // still short of the far side: the assembly must balance on the start
    // platform
    const double com_x = lead_x_ - 0.5 * (n_ - 1) * spacing;
    const double margin = env_.start_edge_x - com_x;
    min_margin_ = std::min(min_margin_, margin);

    if (n_ >= 2) {
        const double pivot = chain_pivot(lead_x_, c);
        const double tip_x = lead_x_ + reach;
        if (tip_x > pivot) {
            const double s = (tip_x - pivot) / c;
            max_tip_drop_ = std::max(
                max_tip_drop_, overhang_tip_drop(s, joint_tilt_, body, params_.pitch_cap));
        }
    }

    if (margin < 0.0) classify(OutcomeKind::FallInGap);
    return !outcome_.has_value();
}

CrossingOutcome GapCrossSolver::outcome() const {
    if (!outcome_) throw std::logic_error("crossing not finished");
    return {*outcome_, max_tip_drop_, min_margin_};
}

std::vector<kinematics::Pose> GapCrossSolver::poses() const {
    std::vector<kinematics::Pose> out;
    const double c = std::cos(heading_eff_), s = std::sin(heading_eff_);
    for (int i = 0; i < n_; ++i) {
        out.push_back({lead_x_ - i * params_.robot.body_length * c,
                       lead_y_ - i * params_.robot.body_length * s, heading_eff_});
    }
    return out;
}

CrossingOutcome classify_crossing(int n_robots, const Environment& env, double heading,
                                  const CrossingParams& params, std::uint64_t seed) {
    GapCrossSolver solver(n_robots, env, heading, params, seed);
    // generous bound; the march either lands or falls well before this
    const double travel_budget =
        env.gap_width + (n_robots + 2) * params.robot.body_length + 200.0;
    const long max_steps = static_cast<long>(travel_budget / params.march_step) + 16;
    for (long i = 0; i < max_steps && solver.step(); ++i) {
    }
    if (!solver.finished())
        throw std::logic_error("gap crossing march did not terminate");
    return solver.outcome();
}

}  // namespace swarmbridge::statics

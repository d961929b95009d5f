#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarmbridge/kinematics.hpp"
#include "swarmbridge/rng.hpp"
#include "swarmbridge/robot_params.hpp"

namespace swarmbridge::statics {

// Two platforms separated by a gap. Both edges are parallel to the world
// y-axis; the start platform occupies x < start_edge_x and sits
// height_diff above the target platform.
struct Environment {
    double gap_width = 60.0;   // mm
    double height_diff = 0.0;  // mm, start top minus target top, >= 0
    double start_edge_x = 0.0;

    double far_edge_x() const { return start_edge_x + gap_width; }
    void validate() const;
};

enum class Support : std::uint8_t { OnStart, OverGap, OnTarget };

// Wheel-line support: a robot holds a platform only while its wheel axle
// is over it. A robot exactly at the edge counts as over the gap.
Support support_at(double center_x, const Environment& env);

// Snapshot of a coupled chain mid-crossing, lead robot first.
struct ChainConfiguration {
    std::vector<int> robot_ids;
    std::vector<kinematics::Pose> poses;
    std::vector<Support> support;
    std::vector<double> joint_tilts;  // per joint, size N-1

    std::size_t size() const { return poses.size(); }
};

ChainConfiguration make_chain(int n, const kinematics::Pose& lead, double body_length,
                              double joint_tilt, const Environment& env);

enum class OutcomeKind : std::uint8_t {
    Success,
    StallAtFarPlatform,
    ConnectionBreak,
    Tumble,
    FallInGap,
};

const char* outcome_name(OutcomeKind k);
OutcomeKind outcome_from_name(const std::string& name);

struct CrossingOutcome {
    OutcomeKind kind = OutcomeKind::Success;
    double max_tip_drop = 0.0;  // mm, largest droop of the lead tip seen
    double com_margin = 0.0;    // mm, smallest start-edge margin seen
};

struct ComCheck {
    bool supported = false;
    double margin = 0.0;  // start_edge_x - com_x; negative past the edge
};

// The assembly holds as long as its combined center of mass stays over
// the start platform or any robot has made contact with the target.
ComCheck com_supported(const ChainConfiguration& chain, const Environment& env);

// Droop of a cantilevered overhang of length s (measured along the chain
// axis from the pivot to the lead tip). Segment k of body_length carries
// pitch min(k * joint_tilt, pitch_cap); the partial segment nearest the
// pivot is the edge-pivot term. Non-decreasing in s and in joint_tilt.
double overhang_tip_drop(double s, double joint_tilt, double body_length, double pitch_cap);

struct TiltProfile {
    std::vector<double> pitch;  // rad, one per robot, chain order (lead first)
    double tip_drop = 0.0;      // mm below the start platform top
};

// Gravity opens every joint past the last supported robot to joint_tilt;
// the k-th robot beyond the edge pitches to min(k * joint_tilt, cap).
// Throws NoOverhang when the chain is fully supported.
TiltProfile tilt_profile(const ChainConfiguration& chain, const Environment& env,
                         double joint_tilt, double body_length, double pitch_cap = 0.6);

struct EffectiveGap {
    double travel_distance = 0.0;   // mm along the heading to clear the gap
    double protrusion_bonus = 0.0;  // mm of extra reach from the leading corner
};

// heading is measured from the perpendicular to the platform edges;
// valid for 0 <= heading < pi/3.
EffectiveGap effective_gap(const Environment& env, double heading, double body_depth,
                           double body_width);

bool landing_feasible(double tip_drop, const Environment& env, double climb_threshold);

struct CrossingParams {
    RobotParams robot;
    double march_step = 1.0;             // mm per quasi-static step
    double pitch_cap = 0.6;              // rad; past this the chain is lost
    double climb_threshold = 5.0;        // mm of step the lead wheels can mount
    double break_drop_threshold = 15.0;  // mm of landing drop the joints survive
    double tumble_pitch_threshold = 0.45;// rad, single robot only
    double advance_noise_frac = 0.02;    // sigma as a fraction of march_step
    double lateral_noise_sigma = 0.2;    // mm per step of lateral slip

    void validate() const;
};

// Incremental quasi-static march of a pre-coupled chain across the gap.
// Advances the chain along the heading, re-evaluating support, droop and
// the center-of-mass rule each step. Deterministic for a fixed seed.
class GapCrossSolver {
public:
    GapCrossSolver(int n_robots, const Environment& env, double heading,
                   const CrossingParams& params, std::uint64_t seed);

    // One march step; returns false once an outcome is decided.
    bool step(double step_mm);
    bool step() { return step(params_.march_step); }

    bool finished() const { return outcome_.has_value(); }
    CrossingOutcome outcome() const;

    // planar chain poses, lead first (for logging / the engine)
    std::vector<kinematics::Pose> poses() const;
    double heading_effective() const { return heading_eff_; }
    bool landed() const { return landed_; }

private:
    void classify(OutcomeKind kind);
    double support_reach(double heading) const;
    double chain_pivot(double lead_x, double cos_h) const;

    int n_;
    Environment env_;
    double heading_base_;
    CrossingParams params_;
    CounterRng rng_;
    double joint_tilt_;

    double lead_x_;
    double lead_y_ = 0.0;
    double heading_eff_;
    double drift_ = 0.0;  // heading random walk, rad
    bool landed_ = false;
    std::optional<OutcomeKind> outcome_;
    double max_tip_drop_ = 0.0;
    double min_margin_;
};

// Full quasi-static trial: chain pre-coupled with the lead tip at the
// start edge, marched until one outcome holds.
CrossingOutcome classify_crossing(int n_robots, const Environment& env, double heading,
                                  const CrossingParams& params, std::uint64_t seed);

}  // namespace swarmbridge::statics

#pragma once

#include <vector>

#include "swarmbridge/kinematics.hpp"

namespace swarmbridge::control {

// All-to-all 1D consensus: u_i = (1/N) * sum_{j != i} (x_j - x_i), which
// reduces to mean(x) - x_i. The outputs sum to zero exactly, so the swarm
// mean is a conserved quantity. Throws DegenerateSwarm for N < 2.
std::vector<double> rendezvous_velocities(const std::vector<double>& positions);

struct AntiRendezvousResult {
    std::vector<double> velocities;  // pointwise negation of rendezvous
    // all positions coincide: outputs are zero and the caller must perturb
    bool zero_separation = false;
};

AntiRendezvousResult anti_rendezvous_velocities(const std::vector<double>& positions);

// True when every adjacent pair (sorted) sits within body_length +/- tol.
bool coupling_reached(const std::vector<double>& positions, double body_length, double tol);

struct GoToGoalGains {
    double k_v = 0.5;       // 1/s
    double v_max = 30.0;    // mm/s
    double k_omega = 2.0;   // 1/s
    double goal_tol = 5.0;  // mm
};

// Clamped proportional drive toward a goal point; forward speed is gated
// by the heading error so the robot turns in place when the goal is
// behind it. Zero twist within goal_tol.
kinematics::BodyTwist go_to_goal(const kinematics::Pose& p, double goal_x, double goal_y,
                                 const GoToGoalGains& gains);

// Infinite wall through `point` with outward normal `normal` (unit vector
// pointing into free space).
struct Wall {
    double point_x = 0.0;
    double point_y = 0.0;
    double normal_x = 1.0;
    double normal_y = 0.0;

    // signed distance of a point to the wall surface (positive = free side)
    double distance(double x, double y) const {
        return (x - point_x) * normal_x + (y - point_y) * normal_y;
    }
};

// Drives the robot along its body axis into the wall and aligns the axis
// with the wall normal; once the engine reports contact the command drops
// to a small holding push. Wall contact is what collapses the lateral and
// heading uncertainty left over from open-loop driving.
kinematics::BodyTwist wall_align(const kinematics::Pose& p, const Wall& wall,
                                 double push_speed, bool in_contact,
                                 double k_omega = 2.0);

}  // namespace swarmbridge::control

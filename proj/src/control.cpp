#include "swarmbridge/control.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swarmbridge/errors.hpp"

namespace swarmbridge::control {

std::vector<double> rendezvous_velocities(const std::vector<double>& positions) {
    const std::size_t n = positions.size();
    if (n < 2) throw DegenerateSwarm("rendezvous needs at least two robots");
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) acc += positions[j] - positions[i];
        }
        u[i] = acc / static_cast<double>(n);
    }
    return u;
}

AntiRendezvousResult anti_rendezvous_velocities(const std::vector<double>& positions) {
    AntiRendezvousResult out;
    out.velocities = rendezvous_velocities(positions);
    for (double& v : out.velocities) v = -v;
    out.zero_separation = std::all_of(positions.begin(), positions.end(),
                                      [&](double x) { return x == positions.front(); });
    return out;
}

bool coupling_reached(const std::vector<double>& positions, double body_length, double tol) {
    if (positions.size() < 2) throw DegenerateSwarm("coupling needs at least two robots");
    std::vector<double> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (std::abs(sorted[i + 1] - sorted[i] - body_length) > tol) return false;
    }
    return true;
}

kinematics::BodyTwist go_to_goal(const kinematics::Pose& p, double goal_x, double goal_y,
                                 const GoToGoalGains& gains) {
    const double dx = goal_x - p.x;
    const double dy = goal_y - p.y;
    const double dist = std::hypot(dx, dy);
    if (dist <= gains.goal_tol) return {0.0, 0.0};

    const double bearing = std::atan2(dy, dx);
    const double err = kinematics::normalize_angle(bearing - p.theta);
    const double v = std::min(gains.k_v * dist, gains.v_max) * std::max(std::cos(err), 0.0);
    return {v, gains.k_omega * err};
}

kinematics::BodyTwist wall_align(const kinematics::Pose& p, const Wall& wall,
                                 double push_speed, bool in_contact, double k_omega) {
    // align the body axis with the wall normal, whichever face is closer
    const double into_wall = std::atan2(-wall.normal_y, -wall.normal_x);
    double err = kinematics::normalize_angle(into_wall - p.theta);
    double direction = 1.0;
    if (std::abs(err) > M_PI / 2.0) {
        // back into the wall instead of turning around
        err = kinematics::normalize_angle(err + M_PI);
        direction = -1.0;
    }
    const double v = in_contact ? 0.1 * push_speed : push_speed;
    return {direction * v, k_omega * err};
}

}  // namespace swarmbridge::control

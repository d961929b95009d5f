#include "swarmbridge/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmbridge::kinematics {

void GearTrain::validate() const {
    if (module_coeff <= 0.0)
        throw std::invalid_argument("gear module coefficient must be positive");
    if (z1 < 1 || z2 < 1 || z3 < 1 || z4 < 1)
        throw std::invalid_argument("gear tooth counts must be >= 1");
}

void DrivetrainParams::validate() const {
    if (wheel_base <= 0.0) throw std::invalid_argument("wheel_base must be positive");
    if (wheel_radius <= 0.0) throw std::invalid_argument("wheel_radius must be positive");
    if (max_motor_speed < 0.0) throw std::invalid_argument("max_motor_speed must be >= 0");
}

double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

double wheel_speed_from_motor(double omega1, const GearTrain& g) {
    return omega1 * g.module_coeff * g.z1 * g.z3 / (2.0 * g.z2);
}

WheelRates wheel_rates_from_twist(const BodyTwist& t, const DrivetrainParams& d) {
    const double wl = t.omega * d.wheel_base;
    return {
        (2.0 * t.v_x + wl) / (2.0 * d.wheel_radius),
        (2.0 * t.v_x - wl) / (2.0 * d.wheel_radius),
    };
}

MotorSpeeds motor_speeds_from_twist_literal(const BodyTwist& t, const GearTrain& g,
                                            const DrivetrainParams& d) {
    const double denom = g.module_coeff * g.z1 * g.z3 * d.wheel_radius;
    const double wl = t.omega * d.wheel_base;
    return {
        g.z2 * (2.0 * t.v_x + wl) / denom,
        g.z2 * (2.0 * t.v_x - wl) / denom,
    };
}

MotorSpeeds motor_speeds_from_twist_consistent(const BodyTwist& t, const GearTrain& g,
                                               const DrivetrainParams& d) {
    const double denom = g.module_coeff * g.z1 * g.z3;
    const double wl = t.omega * d.wheel_base;
    return {
        g.z2 * (2.0 * t.v_x + wl) / denom,
        g.z2 * (2.0 * t.v_x - wl) / denom,
    };
}

Pose integrate_unicycle(const Pose& p, const BodyTwist& t, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
    Pose out;
    if (std::abs(t.omega) < kOmegaStraightEps) {
        out.x = p.x + t.v_x * std::cos(p.theta) * dt;
        out.y = p.y + t.v_x * std::sin(p.theta) * dt;
        out.theta = normalize_angle(p.theta + t.omega * dt);
        return out;
    }
    const double r = t.v_x / t.omega;
    const double th1 = p.theta + t.omega * dt;
    out.x = p.x + r * (std::sin(th1) - std::sin(p.theta));
    out.y = p.y - r * (std::cos(th1) - std::cos(p.theta));
    out.theta = normalize_angle(th1);
    return out;
}

BodyTwist clamp_twist_to_motor_limit(const BodyTwist& t, const GearTrain& g,
                                     const DrivetrainParams& d) {
    if (d.max_motor_speed <= 0.0) return t;
    const MotorSpeeds m = motor_speeds_from_twist_consistent(t, g, d);
    const double peak = std::max(std::abs(m.right), std::abs(m.left));
    if (peak <= d.max_motor_speed) return t;
    const double s = d.max_motor_speed / peak;
    return {t.v_x * s, t.omega * s};
}

}  // namespace swarmbridge::kinematics

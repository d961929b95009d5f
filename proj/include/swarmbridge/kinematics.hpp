#pragma once

namespace swarmbridge::kinematics {

// Gear sizing shared by every meshing gear: reference diameter of gear i
// is module_coeff * z_i. z1 is the motor pinion, z2/z3 the double
// reduction pair, z4 the side gear that doubles as the wheel.
struct GearTrain {
    double module_coeff = 0.5;  // mm of reference diameter per tooth
    int z1 = 8;
    int z2 = 26;
    int z3 = 8;
    int z4 = 68;  // 2 * wheel_radius / module_coeff with the default drivetrain

    double reference_diameter(int teeth) const { return module_coeff * teeth; }
    void validate() const;  // throws std::invalid_argument
};

struct DrivetrainParams {
    double wheel_base = 40.0;     // mm between wheel contact lines
    double wheel_radius = 17.0;   // mm
    double max_motor_speed = 0.0; // rad/s cap on the motor shaft; 0 = uncapped

    void validate() const;
};

// Planar pose, x-axis forward in the body frame. theta stays in (-pi, pi].
struct Pose {
    double x = 0.0;      // mm
    double y = 0.0;      // mm
    double theta = 0.0;  // rad
};

struct BodyTwist {
    double v_x = 0.0;    // mm/s forward
    double omega = 0.0;  // rad/s yaw
};

struct WheelRates {
    double right = 0.0;  // rad/s
    double left = 0.0;
};

struct MotorSpeeds {
    double right = 0.0;
    double left = 0.0;
};

// Below this |omega| the unicycle update degenerates to a straight line.
inline constexpr double kOmegaStraightEps = 1e-9;

double normalize_angle(double a);

// Linear rim speed of the wheel gear for a motor shaft rate omega1.
double wheel_speed_from_motor(double omega1, const GearTrain& g);

// Wheel shaft rates for a commanded body twist.
WheelRates wheel_rates_from_twist(const BodyTwist& t, const DrivetrainParams& d);

// Motor rates in the form z2*(2*v_x +/- omega*L) / (M*z1*z3*R). The extra
// 1/R makes the units mixed; kept as a reporting utility. The consistent
// variant below is this value times R and comes out in rad/s.
MotorSpeeds motor_speeds_from_twist_literal(const BodyTwist& t, const GearTrain& g,
                                            const DrivetrainParams& d);

MotorSpeeds motor_speeds_from_twist_consistent(const BodyTwist& t, const GearTrain& g,
                                               const DrivetrainParams& d);

// Exact constant-twist integration: circular arc of radius v_x/omega, or a
// straight segment when |omega| < kOmegaStraightEps.
Pose integrate_unicycle(const Pose& p, const BodyTwist& t, double dt);

// Scales the twist down so the faster motor just saturates; curvature is
// preserved. No-op when the cap is unset or already satisfied.
BodyTwist clamp_twist_to_motor_limit(const BodyTwist& t, const GearTrain& g,
                                     const DrivetrainParams& d);

}  // namespace swarmbridge::kinematics

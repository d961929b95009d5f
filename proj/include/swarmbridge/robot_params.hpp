#pragma once

#include <stdexcept>

#include "swarmbridge/coupling.hpp"
#include "swarmbridge/kinematics.hpp"

namespace swarmbridge {

// Everything physical about one robot. Defaults describe the desk-scale
// prototype: 50 x 50 x 35 mm body, 62 g, double-reduction drivetrain,
// 1.5 mm hooks.
struct RobotParams {
    double body_length = 50.0;  // mm along the drive axis
    double body_width = 50.0;   // mm
    double body_height = 35.0;  // mm, knobs excluded
    double mass = 62.0;         // g

    kinematics::GearTrain gear;
    kinematics::DrivetrainParams drive;
    coupling::KnobGeometry knob;

    double half_length() const { return 0.5 * body_length; }
    double half_width() const { return 0.5 * body_width; }

    void validate() const {
        if (body_length <= 0 || body_width <= 0 || body_height <= 0 || mass <= 0)
            throw std::invalid_argument("body dimensions and mass must be positive");
        gear.validate();
        drive.validate();
        knob.validate();
    }
};

}  // namespace swarmbridge

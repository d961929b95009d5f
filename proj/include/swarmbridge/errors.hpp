#pragma once

#include <stdexcept>
#include <string>

namespace swarmbridge {

struct FaceOccupied : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when coupling is requested on a face the simulation does not
// support (side faces exist on the body but only front/back mate).
struct NotSupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EdgeMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedDecouple : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAChain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSwarm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoOverhang : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace swarmbridge

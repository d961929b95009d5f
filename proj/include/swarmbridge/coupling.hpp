#pragma once

#include <cstdint>
#include <vector>

#include "swarmbridge/kinematics.hpp"

namespace swarmbridge::coupling {

// Knob/hole/hook dimensions for one robot face. The paper-style knob mates
// by sliding into a neighbor's hole; the hooks on top and bottom of the
// knob block rotation once the joint is gravity-loaded.
struct KnobGeometry {
    double knob_radius = 5.0;     // mm
    double knob_depth = 5.0;      // mm of protrusion from the body face
    double hook_width = 1.5;      // mm, radial size of the hook lip
    double knob_height = 6.0;     // mm
    double hole_height = 7.0;     // mm, knob height + vertical clearance
    double wall_thickness = 2.0;  // mm
    double friction_tilt = 0.160; // rad a friction-only joint settles at
    double slip_threshold = 1.75; // mm; wider hooks fail to lock

    double vertical_clearance() const { return hole_height - knob_height; }
    void validate() const;
};

// arctan(clearance / (knob_depth + hook_width)): the backlash angle a
// locked joint opens to under gravity. Decreasing in hook_width.
double joint_tilt_limit(const KnobGeometry& k);

// Whether the hooks block motion at all; false means the mated pair holds
// by surface friction only.
bool hook_locks(const KnobGeometry& k);

// joint_tilt_limit when the hooks lock, friction_tilt otherwise.
double effective_joint_tilt(const KnobGeometry& k);

enum class Face : std::uint8_t { Front = 0, Back = 1, Left = 2, Right = 3 };

const char* face_name(Face f);

struct JointState {
    bool engaged = false;
    bool locked = false;       // hooks block motion vs friction only
    double tilt_limit = 0.0;   // rad
    double current_tilt = 0.0; // rad, 0 on flat ground
};

struct CouplingTolerances {
    double gap = 2.0;      // mm slack on the body-length face spacing
    double lateral = 3.0;  // mm
    double heading = 0.1;  // rad
};

struct CouplingEdge {
    int robot_i = -1;
    int robot_j = -1;
    Face face_i = Face::Front;
    Face face_j = Face::Back;
    JointState joint;
};

// Undirected graph of physical couplings. One edge per face; front/back
// mating only.
class CouplingGraph {
public:
    void add_robot(int id);
    bool has_robot(int id) const;
    const std::vector<int>& robots() const { return robots_; }
    const std::vector<CouplingEdge>& edges() const { return edges_; }

    bool face_occupied(int robot, Face f) const;
    const CouplingEdge* edge_between(int i, int j) const;

    // Mates the facing front/back faces of i and j if the poses line up:
    // longitudinal spacing within body_length +/- tol.gap, lateral offset
    // within tol.lateral, headings within tol.heading. Returns true when
    // an edge was added, false when the poses are out of tolerance.
    // Throws FaceOccupied when a mating face is taken, NotSupported when
    // the relative pose asks for a side-face mate.
    bool try_couple(int i, int j, const kinematics::Pose& pose_i, const kinematics::Pose& pose_j,
                    const KnobGeometry& knob, double body_length, const CouplingTolerances& tol);

    // Removes the edge between i and j. Both robots must be fully
    // supported by a platform and the joint relaxed; a chain cannot
    // separate mid-bridge.
    void decouple(int i, int j, bool supported_i, bool supported_j);

    // Robot ids ordered front to back. Throws NotAChain on branches,
    // cycles, disconnected robots, or face inconsistencies.
    std::vector<int> chain_order() const;

    double chain_assembly_length(double body_length) const;

    // No face in two edges, unique unordered pairs. Cheap enough to run
    // after every mutation in tests.
    bool invariants_hold() const;

private:
    std::vector<int> robots_;
    std::vector<CouplingEdge> edges_;
};

}  // namespace swarmbridge::coupling

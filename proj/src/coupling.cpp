#include "swarmbridge/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "swarmbridge/errors.hpp"

namespace swarmbridge::coupling {

void KnobGeometry::validate() const {
    if (knob_radius <= 0 || knob_depth <= 0 || hook_width <= 0 || knob_height <= 0 ||
        hole_height <= 0 || wall_thickness <= 0)
        throw std::invalid_argument("knob dimensions must be positive");
    if (vertical_clearance() < 0)
        throw std::invalid_argument("hole must be at least as tall as the knob");
    if (hook_width >= knob_radius - wall_thickness)
        throw std::invalid_argument("hook width must stay below knob_radius - wall_thickness");
    if (friction_tilt < 0) throw std::invalid_argument("friction_tilt must be >= 0");
}

double joint_tilt_limit(const KnobGeometry& k) {
    return std::atan(k.vertical_clearance() / (k.knob_depth + k.hook_width));
}

bool hook_locks(const KnobGeometry& k) {
    return k.hook_width <= k.slip_threshold;
}

double effective_joint_tilt(const KnobGeometry& k) {
    return hook_locks(k) ? joint_tilt_limit(k) : k.friction_tilt;
}

const char* face_name(Face f) {
    switch (f) {
        case Face::Front: return "front";
        case Face::Back: return "back";
        case Face::Left: return "left";
        case Face::Right: return "right";
    }
    return "?";
}

void CouplingGraph::add_robot(int id) {
    if (!has_robot(id)) robots_.push_back(id);
}

bool CouplingGraph::has_robot(int id) const {
    return std::find(robots_.begin(), robots_.end(), id) != robots_.end();
}

bool CouplingGraph::face_occupied(int robot, Face f) const {
    for (const auto& e : edges_) {
        if ((e.robot_i == robot && e.face_i == f) || (e.robot_j == robot && e.face_j == f))
            return true;
    }
    return false;
}

const CouplingEdge* CouplingGraph::edge_between(int i, int j) const {
    for (const auto& e : edges_) {
        if ((e.robot_i == i && e.robot_j == j) || (e.robot_i == j && e.robot_j == i)) return &e;
    }
    return nullptr;
}

bool CouplingGraph::try_couple(int i, int j, const kinematics::Pose& pose_i,
                               const kinematics::Pose& pose_j, const KnobGeometry& knob,
                               double body_length, const CouplingTolerances& tol) {
    if (i == j) throw std::invalid_argument("cannot couple a robot to itself");
    add_robot(i);
    add_robot(j);

    const double dth =
        std::abs(kinematics::normalize_angle(pose_j.theta - pose_i.theta));
    // displacement of j in i's body frame
    const double dx = pose_j.x - pose_i.x;
    const double dy = pose_j.y - pose_i.y;
    const double c = std::cos(pose_i.theta), s = std::sin(pose_i.theta);
    const double lon = dx * c + dy * s;
    const double lat = -dx * s + dy * c;

    // a mostly-lateral neighbor would need a side-face mate
    if (std::abs(lat) > std::abs(lon)) throw NotSupported("side-face coupling is not supported");

    const Face face_i_mate = lon > 0 ? Face::Front : Face::Back;
    const Face face_j_mate = lon > 0 ? Face::Back : Face::Front;
    if (face_occupied(i, face_i_mate))
        throw FaceOccupied(std::string("face already coupled: robot ") + std::to_string(i));
    if (face_occupied(j, face_j_mate))
        throw FaceOccupied(std::string("face already coupled: robot ") + std::to_string(j));

    if (std::abs(std::abs(lon) - body_length) > tol.gap) return false;
    if (std::abs(lat) > tol.lateral) return false;
    if (dth > tol.heading) return false;

    CouplingEdge e;
    e.robot_i = i;
    e.robot_j = j;
    e.face_i = face_i_mate;
    e.face_j = face_j_mate;
    e.joint.engaged = true;
    e.joint.locked = hook_locks(knob);
    e.joint.tilt_limit = effective_joint_tilt(knob);
    e.joint.current_tilt = 0.0;
    edges_.push_back(e);
    return true;
}

void CouplingGraph::decouple(int i, int j, bool supported_i, bool supported_j) {
    auto it = std::find_if(edges_.begin(), edges_.end(), [&](const CouplingEdge& e) {
        return (e.robot_i == i && e.robot_j == j) || (e.robot_i == j && e.robot_j == i);
    });
    if (it == edges_.end())
        throw EdgeMissing("no coupling between robots " + std::to_string(i) + " and " +
                          std::to_string(j));
    if (!supported_i || !supported_j || it->joint.current_tilt != 0.0)
        throw UnsupportedDecouple("both robots must rest on a platform with a relaxed joint");
    edges_.erase(it);
}

std::vector<int> CouplingGraph::chain_order() const {
    if (robots_.empty()) throw NotAChain("empty graph");
    if (edges_.size() + 1 != robots_.size())
        throw NotAChain("edge count does not match a single chain");

    std::map<int, std::vector<int>> adj;
    std::map<int, int> front_neighbor;
    for (const auto& e : edges_) {
        adj[e.robot_i].push_back(e.robot_j);
        adj[e.robot_j].push_back(e.robot_i);
        // the robot mating its back face is ahead of the other
        if (e.face_i == Face::Back) front_neighbor[e.robot_j] = e.robot_i;
        if (e.face_j == Face::Back) front_neighbor[e.robot_i] = e.robot_j;
    }
    for (const auto& [id, nbrs] : adj) {
        if (nbrs.size() > 2) throw NotAChain("robot " + std::to_string(id) + " has branches");
    }

    // lead robot: never behind anyone
    int lead = -1;
    for (int id : robots_) {
        if (front_neighbor.find(id) == front_neighbor.end()) {
            if (lead != -1 && !edges_.empty() && adj.count(id)) throw NotAChain("multiple leads");
            if (adj.count(id) || robots_.size() == 1) lead = id;
        }
    }
    if (robots_.size() == 1) return {robots_.front()};
    if (lead == -1) throw NotAChain("cycle: no lead robot");

    std::vector<int> order;
    std::set<int> seen;
    int cur = lead;
    while (true) {
        order.push_back(cur);
        seen.insert(cur);
        int next = -1;
        for (int nb : adj[cur]) {
            if (!seen.count(nb)) next = nb;
        }
        if (next == -1) break;
        cur = next;
    }
    if (order.size() != robots_.size()) throw NotAChain("graph is not connected");
    return order;
}

double CouplingGraph::chain_assembly_length(double body_length) const {
    return static_cast<double>(chain_order().size()) * body_length;
}

bool CouplingGraph::invariants_hold() const {
    std::set<std::pair<int, Face>> used_faces;
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : edges_) {
        if (!e.joint.engaged) return false;
        if (e.joint.locked && (e.joint.current_tilt < 0 || e.joint.current_tilt > e.joint.tilt_limit))
            return false;
        if (!used_faces.insert({e.robot_i, e.face_i}).second) return false;
        if (!used_faces.insert({e.robot_j, e.face_j}).second) return false;
        auto key = std::minmax(e.robot_i, e.robot_j);
        if (!pairs.insert(key).second) return false;
    }
    return true;
}

}  // namespace swarmbridge::coupling

#pragma once

#include "mission/command.hpp"
#include "mission/quant_table.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nemesys::planning {

/// Start pose of a plan in the mission frame: x forward at mission start,
/// y to the left, yaw counter-clockwise from x.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double yaw = 0.0;  // rad
};

struct Waypoint {
    double x = 0.0;
    double y = 0.0;
    double depth = 0.0;  // positive down
    double speed = 0.0;  // m/s
    /// Compass-style heading to hold at this point, degrees clockwise from the
    /// mission frame x axis.
    std::optional<double> heading_hint;
    /// Station-keeping time at this point, s.
    double hold_s = 0.0;
};

struct WaypointPlan {
    mission::PatternType pattern = mission::PatternType::straight;
    std::vector<Waypoint> waypoints;
    bool closed = false;
    double est_duration = 0.0;
};

struct PlanOptions {
    double arc_step_deg = 15.0;
    double row_spacing = 0.5;

    /// Reads [planning] from mission.ini (directory override as in config::load_text).
    static PlanOptions shipped();
    static PlanOptions from_ini(std::string_view text);
};

/// Degenerate geometry or a zero speed on a moving pattern.
class PlanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Expand a command into waypoints anchored at `origin`. Patterns without a
/// heading parameter are laid out along origin.yaw; straight and hover use the
/// commanded heading in the mission frame. Direction 1 turns left (CCW seen
/// from above), 0 turns right.
WaypointPlan generate_waypoints(const mission::MissionCommand& cmd,
                                const mission::QuantTable& table, const Pose& origin = {},
                                const PlanOptions& options = {});

/// 3-D path length over cruise speed plus hold times. Throws PlanError when a
/// leg has length but zero speed.
double estimate_duration(const WaypointPlan& plan);

/// Total 3-D length of the waypoint polyline.
double path_length(const WaypointPlan& plan);

/// "index,x,y,depth,speed" lines with a header.
std::string export_plan(const WaypointPlan& plan);

/// Mission-frame yaw (rad, CCW) for a compass heading in degrees.
double heading_to_yaw(double heading_deg);

}  // namespace nemesys::planning

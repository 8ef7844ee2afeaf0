#include "planning/pattern.hpp"

#include "common/config.hpp"
#include "mission/payload_codec.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace nemesys::planning {

using mission::ParamRole;
using mission::PatternType;

namespace {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

Vec2 rotate(Vec2 v, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Pattern-local axes: forward along yaw, side toward the turn direction.
struct Frame {
    Vec2 origin;
    Vec2 forward;
    Vec2 side;
    double turn_sign = 1.0;  // +1 CCW, -1 CW

    Vec2 at(double along, double across) const { return origin + along * forward + across * side; }
};

Frame make_frame(const Pose& origin, double yaw, bool ccw)
{
    Frame f;
    f.origin = {origin.x, origin.y};
    f.forward = {std::cos(yaw), std::sin(yaw)};
    const Vec2 left{-f.forward.y, f.forward.x};
    f.turn_sign = ccw ? 1.0 : -1.0;
    f.side = f.turn_sign * left;
    return f;
}

class Builder {
public:
    Builder(const mission::MissionCommand& cmd, const mission::QuantTable& table)
        : m_cmd(cmd), m_table(table)
    {
    }

    double value(ParamRole role) const { return mission::physical(m_cmd, role, m_table); }
    bool ccw() const
    {
        return m_cmd.raw[*m_cmd.slot_of(ParamRole::direction)] == mission::kCounterClockwise;
    }
    unsigned count(ParamRole role) const { return m_cmd.raw[*m_cmd.slot_of(role)]; }

private:
    const mission::MissionCommand& m_cmd;
    const mission::QuantTable& m_table;
};

Waypoint point(Vec2 p, double depth, double speed)
{
    Waypoint w;
    w.x = p.x;
    w.y = p.y;
    w.depth = depth;
    w.speed = speed;
    return w;
}

void require(bool ok, const char* what)
{
    if (!ok)
        throw PlanError(what);
}

std::size_t steps_for(double turns, double arc_step_deg)
{
    return static_cast<std::size_t>(std::ceil(turns * 360.0 / arc_step_deg - 1e-9));
}

/// Square of side `side` starting at the frame origin, `laps` times round.
void square_path(std::vector<Waypoint>& out, const Frame& f, double side, unsigned laps,
                 double depth, double speed)
{
    const Vec2 corners[4] = {f.at(0, 0), f.at(side, 0), f.at(side, side), f.at(0, side)};
    out.push_back(point(corners[0], depth, speed));
    for (unsigned lap = 0; lap < laps; ++lap) {
        for (int c = 1; c < 4; ++c)
            out.push_back(point(corners[c], depth, speed));
        out.push_back(out.front());
    }
}

}  // namespace

PlanOptions PlanOptions::from_ini(std::string_view text)
{
    const auto tree = config::parse_ini(text);
    PlanOptions o;
    o.arc_step_deg = tree.get<double>("planning.arc_step_deg", o.arc_step_deg);
    o.row_spacing = tree.get<double>("planning.row_spacing", o.row_spacing);
    if (!(o.arc_step_deg > 0.0 && o.arc_step_deg <= 90.0))
        throw std::runtime_error("planning.arc_step_deg must be in (0, 90]");
    if (!(o.row_spacing > 0.0))
        throw std::runtime_error("planning.row_spacing must be positive");
    return o;
}

PlanOptions PlanOptions::shipped()
{
    return from_ini(config::load_text("mission.ini"));
}

double heading_to_yaw(double heading_deg)
{
    return -heading_deg * std::numbers::pi / 180.0;
}

WaypointPlan generate_waypoints(const mission::MissionCommand& cmd,
                                const mission::QuantTable& table, const Pose& origin,
                                const PlanOptions& options)
{
    mission::validate(cmd, table);
    const Builder b(cmd, table);
    constexpr double two_pi = 2.0 * std::numbers::pi;

    WaypointPlan plan;
    plan.pattern = cmd.pattern;
    auto& wps = plan.waypoints;

    switch (cmd.pattern) {
    case PatternType::straight: {
        const double speed = b.value(ParamRole::cruise_speed);
        const double depth = b.value(ParamRole::target_depth);
        const double heading = b.value(ParamRole::heading);
        const double length = speed * b.value(ParamRole::duration);
        require(length > 0.0, "straight: zero-length leg (speed or duration is 0)");
        const Frame f = make_frame(origin, heading_to_yaw(heading), true);
        wps.push_back(point(f.at(0, 0), depth, speed));
        wps.push_back(point(f.at(length, 0), depth, speed));
        for (auto& w : wps)
            w.heading_hint = heading;
        break;
    }
    case PatternType::square: {
        const double side = b.value(ParamRole::side_span);
        require(side > 0.0, "square: zero side span");
        square_path(wps, make_frame(origin, origin.yaw, b.ccw()), side, 1,
                    b.value(ParamRole::target_depth), b.value(ParamRole::cruise_speed));
        plan.closed = true;
        break;
    }
    case PatternType::lawnmower: {
        const double width = b.value(ParamRole::grid_width);
        const double height = b.value(ParamRole::grid_height);
        const unsigned laps = b.count(ParamRole::laps);
        require(width > 0.0, "lawnmower: zero grid width");
        require(height > 0.0, "lawnmower: zero grid height gives no rows");
        require(laps > 0, "lawnmower: zero laps");
        const auto rows = static_cast<std::size_t>(std::ceil(height / options.row_spacing - 1e-9)) + 1;
        const double spacing = height / static_cast<double>(rows - 1);
        const Frame f = make_frame(origin, origin.yaw, true);
        const double depth = b.value(ParamRole::target_depth);
        const double speed = b.value(ParamRole::cruise_speed);

        std::vector<Vec2> sweep;
        for (std::size_t r = 0; r < rows; ++r) {
            const double across = r + 1 == rows ? height : spacing * static_cast<double>(r);
            const bool outbound = r % 2 == 0;
            sweep.push_back(f.at(outbound ? 0.0 : width, across));
            sweep.push_back(f.at(outbound ? width : 0.0, across));
        }
        for (unsigned lap = 0; lap < laps; ++lap) {
            const bool forward = lap % 2 == 0;
            for (std::size_t i = 0; i < sweep.size(); ++i) {
                if (lap > 0 && i == 0)
                    continue;  // lap turnaround point already emitted
                wps.push_back(point(forward ? sweep[i] : sweep[sweep.size() - 1 - i], depth, speed));
            }
        }
        break;
    }
    case PatternType::circle:
    case PatternType::helix: {
        const bool helix = cmd.pattern == PatternType::helix;
        const double radius = b.value(ParamRole::radius);
        require(radius > 0.0, helix ? "helix: zero radius" : "circle: zero radius");
        const unsigned turns = helix ? b.count(ParamRole::turns) : 1;
        require(turns > 0, "helix: zero turns");
        const double speed = b.value(ParamRole::cruise_speed);
        const double d0 = helix ? b.value(ParamRole::start_depth) : b.value(ParamRole::target_depth);
        const double d1 = helix ? b.value(ParamRole::end_depth) : d0;

        const Frame f = make_frame(origin, origin.yaw, b.ccw());
        const Vec2 center = f.at(0, radius);
        const Vec2 spoke = -1.0 * (radius * f.side);
        const std::size_t n = steps_for(turns, options.arc_step_deg);
        for (std::size_t k = 0; k <= n; ++k) {
            const double frac = static_cast<double>(k) / static_cast<double>(n);
            const double angle = f.turn_sign * two_pi * turns * frac;
            wps.push_back(point(center + rotate(spoke, angle), d0 + (d1 - d0) * frac, speed));
        }
        wps.back().x = wps.front().x;
        wps.back().y = wps.front().y;
        wps.back().depth = d1;
        plan.closed = !helix || d0 == d1;
        break;
    }
    case PatternType::spiral: {
        const double r0 = b.value(ParamRole::initial_radius);
        const double r1 = b.value(ParamRole::final_radius);
        const unsigned loops = b.count(ParamRole::loops);
        require(loops > 0, "spiral: zero loops");
        require(r0 > 0.0 || r1 > 0.0, "spiral: both radii are zero");
        const double depth = b.value(ParamRole::target_depth);
        const double speed = b.value(ParamRole::cruise_speed);

        const Frame f = make_frame(origin, origin.yaw, b.ccw());
        const Vec2 center = f.at(0, r0);
        const Vec2 unit = -1.0 * f.side;
        const std::size_t n = steps_for(loops, options.arc_step_deg);
        for (std::size_t k = 0; k <= n; ++k) {
            const double frac = static_cast<double>(k) / static_cast<double>(n);
            const double r = k == n ? r1 : r0 + (r1 - r0) * frac;
            const double angle = f.turn_sign * two_pi * loops * frac;
            wps.push_back(point(center + r * rotate(unit, angle), depth, speed));
        }
        break;
    }
    case PatternType::hover: {
        Waypoint w = point({origin.x, origin.y}, b.value(ParamRole::target_depth), 0.0);
        w.heading_hint = b.value(ParamRole::heading);
        w.hold_s = b.value(ParamRole::duration);
        wps.push_back(w);
        break;
    }
    case PatternType::box_orbit: {
        const double radius = b.value(ParamRole::radius);
        const unsigned laps = b.count(ParamRole::laps);
        require(radius > 0.0, "box_orbit: zero radius");
        require(laps > 0, "box_orbit: zero laps");
        square_path(wps, make_frame(origin, origin.yaw, b.ccw()), radius * std::numbers::sqrt2,
                    laps, b.value(ParamRole::target_depth), b.value(ParamRole::cruise_speed));
        plan.closed = true;
        break;
    }
    }

    plan.est_duration = estimate_duration(plan);
    return plan;
}

double path_length(const WaypointPlan& plan)
{
    double total = 0.0;
    for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
        const auto& a = plan.waypoints[i - 1];
        const auto& b = plan.waypoints[i];
        total += std::sqrt((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y) +
                           (b.depth - a.depth) * (b.depth - a.depth));
    }
    return total;
}

double estimate_duration(const WaypointPlan& plan)
{
    if (plan.waypoints.empty())
        throw PlanError("empty plan");
    double t = plan.waypoints.front().hold_s;
    for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
        const auto& a = plan.waypoints[i - 1];
        const auto& b = plan.waypoints[i];
        const double leg = std::sqrt((b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y) +
                                     (b.depth - a.depth) * (b.depth - a.depth));
        if (leg > 0.0) {
            if (!(b.speed > 0.0))
                throw PlanError("zero cruise speed on a moving pattern");
            t += leg / b.speed;
        }
        t += b.hold_s;
    }
    return t;
}

std::string export_plan(const WaypointPlan& plan)
{
    std::string out = "index,x,y,depth,speed\n";
    for (std::size_t i = 0; i < plan.waypoints.size(); ++i) {
        const auto& w = plan.waypoints[i];
        out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", i, w.x, w.y, w.depth, w.speed);
    }
    return out;
}

}  // namespace nemesys::planning

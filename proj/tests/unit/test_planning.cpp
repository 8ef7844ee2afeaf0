#include "mission/command_spec.hpp"
#include "mission/payload_codec.hpp"
#include "planning/pattern.hpp"

#include "../support/generators.hpp"

#include <fmt/format.h>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace nemesys;
using namespace nemesys::planning;
using mission::PatternType;

namespace {

const mission::QuantTable& table()
{
    return mission::QuantTable::shipped();
}

WaypointPlan plan(std::string_view spec, Pose origin = {}, PlanOptions opts = {})
{
    return generate_waypoints(mission::parse_spec(spec, table()), table(), origin, opts);
}

double dist(const Waypoint& a, const Waypoint& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Random command with nonzero speed, geometry and counts so that it plans.
mission::MissionCommand random_plannable(std::mt19937_64& rng)
{
    for (;;) {
        auto cmd = testgen::random_command(rng);
        try {
            generate_waypoints(cmd, table());
            return cmd;
        } catch (const PlanError&) {
        }
    }
}

}  // namespace

TEST(Planning, SquareCornersCcw)
{
    const auto p = plan("square speed=0.5 depth=2 side=10 dir=ccw");
    ASSERT_EQ(p.waypoints.size(), 5U);
    const double expect[5][2] = {{0, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 0}};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(p.waypoints[i].x, expect[i][0], 1e-12);
        EXPECT_NEAR(p.waypoints[i].y, expect[i][1], 1e-12);
        EXPECT_DOUBLE_EQ(p.waypoints[i].depth, 2.0);
    }
    EXPECT_TRUE(p.closed);
    EXPECT_NEAR(p.est_duration, 80.0, 1e-9);
}

TEST(Planning, SquareCwMirrors)
{
    const auto p = plan("square speed=0.5 depth=2 side=10 dir=cw");
    EXPECT_NEAR(p.waypoints[2].x, 10.0, 1e-12);
    EXPECT_NEAR(p.waypoints[2].y, -10.0, 1e-12);
}

TEST(Planning, SquareFollowsOriginYaw)
{
    const auto p = plan("square speed=0.5 depth=2 side=4 dir=ccw", {3.0, -1.0, std::numbers::pi / 2});
    EXPECT_NEAR(p.waypoints[1].x, 3.0, 1e-12);
    EXPECT_NEAR(p.waypoints[1].y, 3.0, 1e-12);
    EXPECT_NEAR(p.waypoints[2].x, -1.0, 1e-12);
    EXPECT_NEAR(p.waypoints[2].y, 3.0, 1e-12);
}

TEST(Planning, StraightLeg)
{
    const auto p = plan("straight speed=1 depth=1 duration=10 heading=0");
    ASSERT_EQ(p.waypoints.size(), 2U);
    EXPECT_NEAR(p.waypoints[1].x, 10.0, 1e-12);
    EXPECT_NEAR(p.waypoints[1].y, 0.0, 1e-12);
    EXPECT_NEAR(p.est_duration, 10.0, 1e-12);
    EXPECT_EQ(p.waypoints[1].heading_hint, 0.0);

    // heading is absolute and clockwise: 90 points to -y whatever the start yaw
    const auto q = plan("straight speed=1 depth=1 duration=10 heading=90", {0, 0, 1.0});
    EXPECT_NEAR(q.waypoints[1].x, 0.0, 1e-9);
    EXPECT_NEAR(q.waypoints[1].y, -10.0, 1e-9);
}

TEST(Planning, HoverSinglePoint)
{
    const auto p = plan("hover duration=120 depth=1 heading=45", {2, 3, 0});
    ASSERT_EQ(p.waypoints.size(), 1U);
    EXPECT_DOUBLE_EQ(p.waypoints[0].x, 2.0);
    EXPECT_DOUBLE_EQ(p.waypoints[0].hold_s, 120.0);
    EXPECT_NEAR(*p.waypoints[0].heading_hint, 45.0, 1.40625 / 2);
    EXPECT_DOUBLE_EQ(p.est_duration, 120.0);
}

TEST(Planning, CirclePointsOnRadius)
{
    for (const auto dir : {"cw", "ccw"}) {
        const auto p = plan(fmt::format("circle speed=0.5 depth=1 radius=7.5 dir={}", dir),
                            {1.0, 2.0, 0.3});
        ASSERT_EQ(p.waypoints.size(), 25U);  // 24 steps of 15 degrees, closed
        // center is the point equidistant from waypoint 0, 6 and 12
        const auto& a = p.waypoints[0];
        const auto& c = p.waypoints[12];
        const Waypoint center{(a.x + c.x) / 2, (a.y + c.y) / 2};
        for (const auto& w : p.waypoints)
            EXPECT_NEAR(dist(w, center), 7.5, 1e-9);
        for (std::size_t i = 1; i < p.waypoints.size(); ++i)
            EXPECT_NEAR(dist(p.waypoints[i], p.waypoints[i - 1]), 2 * 7.5 * std::sin(std::numbers::pi / 24), 1e-9);
        EXPECT_TRUE(p.closed);
        EXPECT_EQ(p.waypoints.back().x, p.waypoints.front().x);
        EXPECT_EQ(p.waypoints.back().y, p.waypoints.front().y);
    }
}

TEST(Planning, HelixDepths)
{
    const auto p = plan("helix speed=0.5 start_depth=1 end_depth=3 radius=2 turns=4 dir=ccw");
    ASSERT_EQ(p.waypoints.size(), 4U * 24 + 1);
    EXPECT_EQ(p.waypoints.front().depth, 1.0);
    EXPECT_EQ(p.waypoints.back().depth, 3.0);
    for (std::size_t i = 1; i < p.waypoints.size(); ++i)
        EXPECT_GT(p.waypoints[i].depth, p.waypoints[i - 1].depth);
    EXPECT_FALSE(p.closed);

    const auto up = plan("helix speed=0.5 start_depth=3 end_depth=1 radius=2 turns=1 dir=cw");
    EXPECT_EQ(up.waypoints.back().depth, 1.0);
}

TEST(Planning, SpiralRadiusMonotone)
{
    for (const auto& [spec, r0, r1] : std::vector<std::tuple<std::string, double, double>>{
             {"spiral speed=0.5 depth=1 initial_radius=1 final_radius=10 loops=3 dir=ccw", 1, 10},
             {"spiral speed=0.5 depth=1 initial_radius=12 final_radius=0 loops=2 dir=cw", 12, 0}}) {
        const auto p = plan(spec, {0, 0, 0});
        // center lies r0 across from the start, on the turning side
        const double side = spec.ends_with("ccw") ? 1.0 : -1.0;
        const Waypoint center{0.0, side * r0};
        EXPECT_NEAR(dist(p.waypoints.front(), center), r0, 1e-12);
        EXPECT_NEAR(dist(p.waypoints.back(), center), r1, 1e-9);
        for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
            const double a = dist(p.waypoints[i - 1], center);
            const double b = dist(p.waypoints[i], center);
            if (r1 > r0)
                EXPECT_GT(b, a);
            else
                EXPECT_LT(b, a);
            EXPECT_DOUBLE_EQ(p.waypoints[i].depth, 1.0);
        }
    }
}

TEST(Planning, LawnmowerRowsAndCoverage)
{
    const auto p = plan("lawnmower speed=0.5 depth=1 width=20 height=7.5 laps=1");
    const auto opts = PlanOptions{};
    const std::size_t rows = static_cast<std::size_t>(std::ceil(7.5 / opts.row_spacing)) + 1;
    ASSERT_EQ(p.waypoints.size(), 2 * rows);
    const double spacing = 7.5 / static_cast<double>(rows - 1);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& a = p.waypoints[2 * r];
        const auto& b = p.waypoints[2 * r + 1];
        EXPECT_NEAR(a.y, spacing * r, 1e-12);
        EXPECT_EQ(a.y, b.y);
        EXPECT_NEAR(std::abs(b.x - a.x), 20.0, 1e-12);
        EXPECT_EQ(b.x > a.x, r % 2 == 0);  // alternating direction
    }
}

TEST(Planning, LawnmowerSpacingFromOption)
{
    PlanOptions o;
    o.row_spacing = 1.0;
    const auto p = plan("lawnmower speed=0.5 depth=1 width=4 height=2.5 laps=1", {}, o);
    ASSERT_EQ(p.waypoints.size(), 8U);  // ceil(2.5) + 1 rows
    EXPECT_NEAR(p.waypoints[2].y, 2.5 / 3, 1e-12);
}

TEST(Planning, LawnmowerLapsReverse)
{
    const auto p = plan("lawnmower speed=0.5 depth=1 width=4 height=1 laps=2");
    const auto one = plan("lawnmower speed=0.5 depth=1 width=4 height=1 laps=1");
    ASSERT_EQ(p.waypoints.size(), 2 * one.waypoints.size() - 1);
    EXPECT_EQ(p.waypoints.back().x, one.waypoints.front().x);
    EXPECT_EQ(p.waypoints.back().y, one.waypoints.front().y);
    EXPECT_NEAR(p.est_duration, 2 * one.est_duration, 1e-9);
}

TEST(Planning, BoxOrbitHalfDiagonal)
{
    const auto p = plan("box_orbit speed=0.5 depth=1 radius=5 dir=ccw laps=2");
    ASSERT_EQ(p.waypoints.size(), 9U);
    const double side = 5 * std::numbers::sqrt2;
    EXPECT_NEAR(p.waypoints[2].x, side, 1e-12);
    EXPECT_NEAR(p.waypoints[2].y, side, 1e-12);
    // square center is `radius` from every corner
    const Waypoint center{side / 2, side / 2};
    for (const auto& w : p.waypoints)
        EXPECT_NEAR(dist(w, center), 5.0, 1e-12);
    EXPECT_TRUE(p.closed);
    EXPECT_NEAR(p.est_duration, 2 * 4 * side / 0.5, 1e-9);
}

TEST(Planning, DegenerateGeometryRejected)
{
    for (const auto* spec : {
             "circle speed=0.5 depth=1 radius=0 dir=cw",
             "helix speed=0.5 start_depth=1 end_depth=2 radius=0 turns=2 dir=cw",
             "helix speed=0.5 start_depth=1 end_depth=2 radius=1 turns=0 dir=cw",
             "lawnmower speed=0.5 depth=1 width=10 height=0 laps=1",
             "lawnmower speed=0.5 depth=1 width=0 height=5 laps=1",
             "lawnmower speed=0.5 depth=1 width=10 height=5 laps=0",
             "spiral speed=0.5 depth=1 initial_radius=0 final_radius=0 loops=2 dir=cw",
             "spiral speed=0.5 depth=1 initial_radius=1 final_radius=3 loops=0 dir=cw",
             "square speed=0.5 depth=1 side=0 dir=cw",
             "box_orbit speed=0.5 depth=1 radius=2 dir=cw laps=0",
             "straight speed=0 depth=1 duration=10 heading=0",
             "circle speed=0 depth=1 radius=3 dir=cw",
         })
        EXPECT_THROW(plan(spec), PlanError) << spec;
}

TEST(Planning, EstimateDurationZeroSpeed)
{
    WaypointPlan p;
    p.waypoints = {Waypoint{0, 0, 1, 0}, Waypoint{1, 0, 1, 0}};
    EXPECT_THROW(estimate_duration(p), PlanError);
    p.waypoints[1].speed = 2.0;
    EXPECT_DOUBLE_EQ(estimate_duration(p), 0.5);
}

TEST(PlanningProperties, ClosedPlansReturnToStart)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const auto cmd = random_plannable(rng);
        std::uniform_real_distribution<double> u(-50, 50);
        const Pose origin{u(rng), u(rng), u(rng) / 10};
        const auto p = generate_waypoints(cmd, table(), origin);
        ASSERT_FALSE(p.waypoints.empty());
        EXPECT_NEAR(p.waypoints.front().x, origin.x, 1e-12);
        EXPECT_NEAR(p.waypoints.front().y, origin.y, 1e-12);
        if (p.closed) {
            EXPECT_LE(dist(p.waypoints.front(), p.waypoints.back()), 1e-9);
            EXPECT_LE(std::abs(p.waypoints.front().depth - p.waypoints.back().depth), 1e-9);
        }
        const bool must_close = cmd.pattern == PatternType::square ||
                                cmd.pattern == PatternType::circle ||
                                cmd.pattern == PatternType::box_orbit;
        if (must_close)
            EXPECT_TRUE(p.closed);
        for (const auto& w : p.waypoints) {
            EXPECT_GE(w.depth, 0.0);
            EXPECT_GE(w.speed, 0.0);
        }
        if (cmd.pattern != PatternType::helix) {
            const double depth = mission::physical(cmd, mission::ParamRole::target_depth, table());
            for (const auto& w : p.waypoints)
                EXPECT_EQ(w.depth, depth);
        }
        EXPECT_GE(p.est_duration, 0.0);
    }
}

TEST(PlanningProperties, DirectionMirrorsAcrossHeadingAxis)
{
    std::mt19937_64 rng(6);
    int checked = 0;
    while (checked < 500) {
        auto cmd = random_plannable(rng);
        const auto dir = cmd.slot_of(mission::ParamRole::direction);
        if (!dir)
            continue;
        cmd.raw[*dir] = mission::kClockwise;
        const auto cw = generate_waypoints(cmd, table());
        cmd.raw[*dir] = mission::kCounterClockwise;
        const auto ccw = generate_waypoints(cmd, table());
        ASSERT_EQ(cw.waypoints.size(), ccw.waypoints.size());
        for (std::size_t i = 0; i < cw.waypoints.size(); ++i) {
            EXPECT_NEAR(cw.waypoints[i].x, ccw.waypoints[i].x, 1e-9);
            EXPECT_NEAR(cw.waypoints[i].y, -ccw.waypoints[i].y, 1e-9);
            EXPECT_EQ(cw.waypoints[i].depth, ccw.waypoints[i].depth);
        }
        ++checked;
    }
}

TEST(PlanningProperties, DurationIsLengthOverSpeed)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto cmd = random_plannable(rng);
        if (cmd.pattern == PatternType::hover)
            continue;
        const auto p = generate_waypoints(cmd, table());
        const double v = mission::physical(cmd, mission::ParamRole::cruise_speed, table());
        EXPECT_NEAR(p.est_duration, path_length(p) / v, 1e-6 * p.est_duration);
    }
}

TEST(Planning, ExportFormat)
{
    const auto text = export_plan(plan("square speed=0.5 depth=2 side=10 dir=ccw"));
    EXPECT_EQ(text.substr(0, text.find('\n', 22) + 1),
              "index,x,y,depth,speed\n0,0.000000,0.000000,2.000000,0.500000\n");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
}

TEST(Planning, OptionsFromIni)
{
    const auto o = PlanOptions::shipped();
    EXPECT_DOUBLE_EQ(o.arc_step_deg, 15.0);
    EXPECT_THROW(PlanOptions::from_ini("[planning]\narc_step_deg = 0\n"), std::runtime_error);
}

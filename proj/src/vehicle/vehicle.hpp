#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nemesys::vehicle {

/// 4-DOF state. Yaw is counter-clockwise seen from above and is not wrapped;
/// depth and heave velocity are positive down.
struct VehicleState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;    // depth, m
    double phi = 0.0;  // roll, rad
    double psi = 0.0;  // yaw, rad
    double u = 0.0;    // surge, m/s
    double w = 0.0;    // heave (down), m/s
    double p = 0.0;    // roll rate, rad/s
    double r = 0.0;    // yaw rate, rad/s
    double t = 0.0;

    friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct Thruster {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();   // from CG, body frame
    Eigen::Vector3d direction = Eigen::Vector3d::UnitX();  // unit thrust direction
    double max_thrust = 0.0;                               // N
    /// Fraction of the commanded thrust that reaches the hull.
    double efficiency = 1.0;
};

/// Quadratic and linear damping for one axis.
struct AxisDrag {
    double quadratic = 0.0;
    double linear = 0.0;

    double force(double v) const { return quadratic * std::abs(v) * v + linear * v; }
};

struct ControlGains {
    double depth_kp = 0.0;
    double depth_kd = 0.0;
    double roll_kp = 0.0;
    double roll_kd = 0.0;
};

struct VehicleParams {
    std::string name;
    double mass = 0.0;
    double volume = 0.0;
    double metacentric_height = 0.0;  // z_B - z_G, positive when CG is below CB
    double gravity = 9.81;
    double density = 1000.0;
    double ixx = 0.0;
    double izz = 0.0;
    AxisDrag surge_drag;
    AxisDrag heave_drag;
    AxisDrag roll_drag;
    AxisDrag yaw_drag;
    std::vector<Thruster> thrusters;
    ControlGains gains;

    double weight() const { return mass * gravity; }
    double buoyancy() const { return density * volume * gravity; }
    /// B - W, positive for a vehicle that floats up.
    double net_buoyancy() const { return buoyancy() - weight(); }

    /// Throws std::invalid_argument if mass, inertia or thruster list are unusable.
    void validate() const;

    static VehicleParams from_ini(std::string_view text);
    static VehicleParams load(const std::filesystem::path& path);
    /// Shipped configuration 1, 2 or 3 (file vehicle_cfg<N>.ini, overridable
    /// like every shipped config).
    static VehicleParams shipped(int configuration,
                                 const std::optional<std::filesystem::path>& dir = {});
};

/// Per-thruster force command, N, before efficiency.
using ThrustAllocation = std::vector<double>;

/// Hydrostatic roll couple m g h sin(theta). Acts against theta when h > 0.
double restoring_moment(const VehicleParams& params, double theta);

/// 6 x N matrix whose column i is [f_i; r_i x f_i].
Eigen::MatrixXd controllability_matrix(const VehicleParams& params);

/// Singular values above tol * largest.
int controllability_rank(const Eigen::MatrixXd& b, double tol = 1e-9);

/// Body wrench produced by an allocation after efficiencies:
/// surge force, upward force, roll moment, yaw moment.
struct Wrench {
    double surge = 0.0;
    double heave_up = 0.0;
    double roll = 0.0;
    double yaw = 0.0;
};

Wrench applied_wrench(const VehicleParams& params, const ThrustAllocation& alloc);

/// One semi-implicit Euler step. Drag is integrated implicitly, positions use
/// the updated velocities, depth is clamped at the surface. Commands beyond
/// max thrust are saturated.
VehicleState step_dynamics(const VehicleState& state, const ThrustAllocation& alloc,
                           const VehicleParams& params, double dt);

/// Clip each command to +-max_thrust.
ThrustAllocation saturate(const VehicleParams& params, ThrustAllocation alloc);

/// Least-squares thruster commands for a desired wrench via the pseudo-inverse
/// of the effective configuration matrix. `primary` is met first; as much of
/// `secondary` is added as fits inside the thrust limits.
ThrustAllocation allocate(const VehicleParams& params, const Wrench& primary,
                          const Wrench& secondary = {});

/// Downward force that cancels net buoyancy.
double depth_trim(const VehicleParams& params);

/// Vertical force Kp*(target - z) - Kd*w + trim, plus roll damping from the
/// config gains, allocated to the thrusters. `extra` (surge, yaw) fills the
/// remaining thrust headroom.
ThrustAllocation pd_depth_control(const VehicleState& state, double target_depth,
                                  const VehicleParams& params, double kp, double kd,
                                  const Wrench& extra = {});
ThrustAllocation pd_depth_control(const VehicleState& state, double target_depth,
                                  const VehicleParams& params);

struct ManeuverMetrics {
    double yaw_rate_deg_s = 0.0;
    double heave_rate_mm_s = 0.0;
};

/// Net heading change (unwrapped) and depth change over elapsed time.
/// Throws std::invalid_argument for fewer than two samples or zero elapsed time.
ManeuverMetrics maneuver_metrics(const std::vector<VehicleState>& log);

/// "t,x,y,z,phi,psi,u,w,r" with a header.
std::string export_state_log(const std::vector<VehicleState>& log);

}  // namespace nemesys::vehicle

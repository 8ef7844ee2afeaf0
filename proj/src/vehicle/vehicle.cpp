#include "vehicle/vehicle.hpp"

#include "common/config.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nemesys::vehicle {

namespace {

Eigen::Vector3d parse_vec3(const std::string& text, const std::string& what)
{
    std::istringstream in(text);
    Eigen::Vector3d v;
    if (!(in >> v.x() >> v.y() >> v.z()))
        throw std::runtime_error("vehicle config: " + what + " needs three numbers");
    std::string rest;
    if (in >> rest)
        throw std::runtime_error("vehicle config: " + what + " has trailing text");
    return v;
}

AxisDrag read_drag(const boost::property_tree::ptree& tree, const std::string& axis)
{
    return {tree.get<double>("drag." + axis + "_quadratic"), tree.get<double>("drag." + axis + "_linear", 0.0)};
}

/// 4 x N map from thruster commands to (surge, heave_up, roll, yaw).
Eigen::Matrix<double, 4, Eigen::Dynamic> effective_map(const VehicleParams& params)
{
    Eigen::Matrix<double, 4, Eigen::Dynamic> a(4, params.thrusters.size());
    for (std::size_t i = 0; i < params.thrusters.size(); ++i) {
        const auto& th = params.thrusters[i];
        const Eigen::Vector3d m = th.position.cross(th.direction);
        a.col(static_cast<Eigen::Index>(i)) << th.direction.x(), th.direction.z(), m.x(), m.z();
        a.col(static_cast<Eigen::Index>(i)) *= th.efficiency;
    }
    return a;
}

Eigen::Vector4d as_vector(const Wrench& w)
{
    return {w.surge, w.heave_up, w.roll, w.yaw};
}

double implicit_update(double v, double force, double inertia, const AxisDrag& drag, double dt)
{
    return (v + dt * force / inertia) /
           (1.0 + dt * (drag.linear + drag.quadratic * std::abs(v)) / inertia);
}

}  // namespace

void VehicleParams::validate() const
{
    if (!(mass > 0.0))
        throw std::invalid_argument("vehicle: mass must be positive");
    if (!(ixx > 0.0 && izz > 0.0))
        throw std::invalid_argument("vehicle: inertias must be positive");
    if (!(volume > 0.0 && gravity > 0.0 && density > 0.0))
        throw std::invalid_argument("vehicle: volume, gravity and density must be positive");
    if (thrusters.empty())
        throw std::invalid_argument("vehicle: at least one thruster is required");
    for (const auto& th : thrusters) {
        if (std::abs(th.direction.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("vehicle: thruster direction must be a unit vector");
        if (!(th.max_thrust > 0.0) || !(th.efficiency > 0.0 && th.efficiency <= 1.0))
            throw std::invalid_argument("vehicle: thruster needs max_thrust > 0 and efficiency in (0, 1]");
    }
    for (const auto* d : {&surge_drag, &heave_drag, &roll_drag, &yaw_drag})
        if (d->quadratic < 0.0 || d->linear < 0.0)
            throw std::invalid_argument("vehicle: drag coefficients must be non-negative");
}

VehicleParams VehicleParams::from_ini(std::string_view text)
{
    const auto tree = config::parse_ini(text);
    VehicleParams p;
    try {
        p.name = tree.get<std::string>("vehicle.name", "");
        p.mass = tree.get<double>("vehicle.mass");
        p.volume = tree.get<double>("vehicle.volume");
        p.metacentric_height = tree.get<double>("vehicle.metacentric_height");
        p.gravity = tree.get<double>("vehicle.gravity", 9.81);
        p.density = tree.get<double>("vehicle.density", 1000.0);
        p.ixx = tree.get<double>("vehicle.ixx");
        p.izz = tree.get<double>("vehicle.izz");
        p.surge_drag = read_drag(tree, "surge");
        p.heave_drag = read_drag(tree, "heave");
        p.roll_drag = read_drag(tree, "roll");
        p.yaw_drag = read_drag(tree, "yaw");
        for (int i = 1;; ++i) {
            const auto section = tree.get_child_optional(fmt::format("thruster_{}", i));
            if (!section)
                break;
            Thruster th;
            th.position = parse_vec3(section->get<std::string>("position"), "position");
            th.direction = parse_vec3(section->get<std::string>("direction"), "direction");
            th.max_thrust = section->get<double>("max_thrust");
            th.efficiency = section->get<double>("efficiency", 1.0);
            p.thrusters.push_back(th);
        }
        p.gains.depth_kp = tree.get<double>("control.depth_kp", 0.0);
        p.gains.depth_kd = tree.get<double>("control.depth_kd", 0.0);
        p.gains.roll_kp = tree.get<double>("control.roll_kp", 0.0);
        p.gains.roll_kd = tree.get<double>("control.roll_kd", 0.0);
    } catch (const boost::property_tree::ptree_error& e) {
        throw std::runtime_error(std::string("vehicle config: ") + e.what());
    }
    p.validate();
    return p;
}

VehicleParams VehicleParams::load(const std::filesystem::path& path)
{
    return from_ini(config::read_file(path));
}

VehicleParams VehicleParams::shipped(int configuration, const std::optional<std::filesystem::path>& dir)
{
    if (configuration < 1 || configuration > 3)
        throw std::invalid_argument(fmt::format("no vehicle configuration {}", configuration));
    return from_ini(config::load_text(fmt::format("vehicle_cfg{}.ini", configuration), dir));
}

double restoring_moment(const VehicleParams& params, double theta)
{
    return params.weight() * params.metacentric_height * std::sin(theta);
}

Eigen::MatrixXd controllability_matrix(const VehicleParams& params)
{
    if (params.thrusters.empty())
        throw std::invalid_argument("controllability_matrix: no thrusters");
    Eigen::MatrixXd b(6, params.thrusters.size());
    for (std::size_t i = 0; i < params.thrusters.size(); ++i) {
        const auto& th = params.thrusters[i];
        b.col(static_cast<Eigen::Index>(i)) << th.direction, th.position.cross(th.direction);
    }
    return b;
}

int controllability_rank(const Eigen::MatrixXd& b, double tol)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("controllability_rank: tol must be positive");
    if (b.size() == 0)
        return 0;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    return static_cast<int>((s.array() > tol * s(0)).count());
}

ThrustAllocation saturate(const VehicleParams& params, ThrustAllocation alloc)
{
    if (alloc.size() != params.thrusters.size())
        throw std::invalid_argument("allocation size does not match thruster count");
    for (std::size_t i = 0; i < alloc.size(); ++i) {
        const double m = params.thrusters[i].max_thrust;
        alloc[i] = std::clamp(alloc[i], -m, m);
    }
    return alloc;
}

Wrench applied_wrench(const VehicleParams& params, const ThrustAllocation& alloc)
{
    const auto cmd = saturate(params, alloc);
    const Eigen::Vector4d w =
        effective_map(params) * Eigen::Map<const Eigen::VectorXd>(cmd.data(), static_cast<Eigen::Index>(cmd.size()));
    return {w(0), w(1), w(2), w(3)};
}

ThrustAllocation allocate(const VehicleParams& params, const Wrench& primary, const Wrench& secondary)
{
    const auto a = effective_map(params);
    const Eigen::MatrixXd pinv = a.completeOrthogonalDecomposition().pseudoInverse();
    const Eigen::VectorXd base = pinv * as_vector(primary);
    const Eigen::VectorXd extra = pinv * as_vector(secondary);

    ThrustAllocation out(params.thrusters.size());
    double scale = 1.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const double m = params.thrusters[i].max_thrust;
        out[i] = std::clamp(base(k), -m, m);
        if (std::abs(extra(k)) <= 1e-9 * m)
            continue;
        if (extra(k) > 0.0)
            scale = std::min(scale, (m - out[i]) / extra(k));
        else
            scale = std::min(scale, (-m - out[i]) / extra(k));
    }
    scale = std::max(scale, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += scale * extra(static_cast<Eigen::Index>(i));
    return saturate(params, out);
}

VehicleState step_dynamics(const VehicleState& s, const ThrustAllocation& alloc,
                           const VehicleParams& params, double dt)
{
    if (!(dt > 0.0 && dt <= 0.1))
        throw std::invalid_argument("step_dynamics: dt must be in (0, 0.1] s");
    const Wrench f = applied_wrench(params, alloc);

    VehicleState n = s;
    const double heave_down = -f.heave_up - params.net_buoyancy() * std::cos(s.phi);
    const double roll = f.roll - restoring_moment(params, s.phi);
    n.u = implicit_update(s.u, f.surge, params.mass, params.surge_drag, dt);
    n.w = implicit_update(s.w, heave_down, params.mass, params.heave_drag, dt);
    n.p = implicit_update(s.p, roll, params.ixx, params.roll_drag, dt);
    n.r = implicit_update(s.r, f.yaw, params.izz, params.yaw_drag, dt);

    n.phi = s.phi + dt * n.p;
    n.psi = s.psi + dt * n.r;
    n.x = s.x + dt * n.u * std::cos(n.psi);
    n.y = s.y + dt * n.u * std::sin(n.psi);
    n.z = s.z + dt * n.w * std::cos(n.phi);
    if (n.z < 0.0) {
        n.z = 0.0;
        if (n.w * std::cos(n.phi) < 0.0)
            n.w = 0.0;
    }
    n.t = s.t + dt;
    return n;
}

double depth_trim(const VehicleParams& params)
{
    return params.net_buoyancy();
}

ThrustAllocation pd_depth_control(const VehicleState& state, double target_depth,
                                  const VehicleParams& params, double kp, double kd,
                                  const Wrench& extra)
{
    if (kp < 0.0 || kd < 0.0)
        throw std::invalid_argument("pd_depth_control: gains must be non-negative");
    const double down = kp * (target_depth - state.z) - kd * state.w + depth_trim(params);
    Wrench primary;
    primary.heave_up = -down;
    primary.roll = -params.gains.roll_kp * state.phi - params.gains.roll_kd * state.p;
    return allocate(params, primary, extra);
}

ThrustAllocation pd_depth_control(const VehicleState& state, double target_depth,
                                  const VehicleParams& params)
{
    return pd_depth_control(state, target_depth, params, params.gains.depth_kp, params.gains.depth_kd);
}

ManeuverMetrics maneuver_metrics(const std::vector<VehicleState>& log)
{
    if (log.size() < 2)
        throw std::invalid_argument("maneuver_metrics: need at least two samples");
    const double elapsed = log.back().t - log.front().t;
    if (!(elapsed > 0.0))
        throw std::invalid_argument("maneuver_metrics: zero elapsed time");
    double turn = 0.0;
    for (std::size_t i = 1; i < log.size(); ++i)
        turn += std::remainder(log[i].psi - log[i - 1].psi, 2.0 * M_PI);
    return {turn * 180.0 / M_PI / elapsed, (log.back().z - log.front().z) * 1000.0 / elapsed};
}

std::string export_state_log(const std::vector<VehicleState>& log)
{
    std::string out = "t,x,y,z,phi,psi,u,w,r\n";
    for (const auto& s : log)
        out += fmt::format("{:.3f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", s.t, s.x,
                           s.y, s.z, s.phi, s.psi, s.u, s.w, s.r);
    return out;
}

}  // namespace nemesys::vehicle

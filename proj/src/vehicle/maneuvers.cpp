#include "vehicle/maneuvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nemesys::vehicle {

ThrustAllocation full_heave_down(const VehicleParams& params)
{
    ThrustAllocation a(params.thrusters.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& th = params.thrusters[i];
        if (std::abs(th.direction.z()) > 1e-12)
            a[i] = th.direction.z() > 0.0 ? -th.max_thrust : th.max_thrust;
    }
    return a;
}

ThrustAllocation full_yaw(const VehicleParams& params)
{
    ThrustAllocation a(params.thrusters.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& th = params.thrusters[i];
        const double n = th.position.cross(th.direction).z();
        if (std::abs(n) > 1e-12)
            a[i] = n > 0.0 ? th.max_thrust : -th.max_thrust;
    }
    return a;
}

std::vector<VehicleState> heave_trial(const VehicleParams& params, double target_depth, double max_time)
{
    const auto alloc = full_heave_down(params);
    std::vector<VehicleState> log{VehicleState{}};
    while (log.back().z < target_depth && log.back().t < max_time)
        log.push_back(step_dynamics(log.back(), alloc, params, kControlPeriod));
    return log;
}

std::vector<VehicleState> yaw_trial(const VehicleParams& params, double depth, double duration)
{
    const auto yaw = full_yaw(params);
    VehicleState s;
    s.z = depth;
    std::vector<VehicleState> log{s};
    const auto steps = static_cast<long>(std::llround(duration / kControlPeriod));
    for (long k = 0; k < steps; ++k) {
        auto alloc = pd_depth_control(log.back(), depth, params);
        for (std::size_t i = 0; i < alloc.size(); ++i)
            if (yaw[i] != 0.0)
                alloc[i] = yaw[i];
        log.push_back(step_dynamics(log.back(), alloc, params, kControlPeriod));
    }
    return log;
}

std::vector<VehicleState> passive_roll_trial(const VehicleParams& params, double roll0, double duration,
                                             double depth)
{
    VehicleState s;
    s.z = depth;
    s.phi = roll0;
    std::vector<VehicleState> log{s};
    const ThrustAllocation zero(params.thrusters.size(), 0.0);
    const auto steps = static_cast<long>(std::llround(duration / kControlPeriod));
    for (long k = 0; k < steps; ++k)
        log.push_back(step_dynamics(log.back(), zero, params, kControlPeriod));
    return log;
}

std::vector<VehicleState> depth_step_trial(const VehicleParams& params, double target, double duration)
{
    std::vector<VehicleState> log{VehicleState{}};
    const auto steps = static_cast<long>(std::llround(duration / kControlPeriod));
    for (long k = 0; k < steps; ++k)
        log.push_back(step_dynamics(log.back(), pd_depth_control(log.back(), target, params), params,
                                    kControlPeriod));
    return log;
}

StepResponse analyze_step(const std::vector<VehicleState>& log, double target, double band, double hold_window)
{
    if (log.empty())
        throw std::invalid_argument("analyze_step: empty log");
    StepResponse r;
    const double t0 = log.front().t;
    const double sign = target >= log.front().z ? 1.0 : -1.0;
    bool inside_prev = false;
    for (const auto& s : log) {
        const double err = s.z - target;
        const bool inside = std::abs(err) <= band;
        if (inside && r.reach_time < 0.0)
            r.reach_time = s.t - t0;
        if (inside && !inside_prev)
            r.settle_time = s.t - t0;
        if (!inside)
            r.settle_time = -1.0;
        inside_prev = inside;
        r.overshoot = std::max(r.overshoot, sign * err);
        if (s.t >= log.back().t - hold_window - 1e-9)
            r.max_error_after = std::max(r.max_error_after, std::abs(err));
    }
    return r;
}

}  // namespace nemesys::vehicle

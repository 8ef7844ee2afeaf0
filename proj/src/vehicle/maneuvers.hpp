#pragma once

#include "vehicle/vehicle.hpp"

#include <vector>

namespace nemesys::vehicle {

inline constexpr double kControlPeriod = 0.01;

/// Full downward thrust on every thruster with a vertical component.
ThrustAllocation full_heave_down(const VehicleParams& params);
/// Full positive yaw moment from every thruster that produces one.
ThrustAllocation full_yaw(const VehicleParams& params);

/// Descent from rest at the surface under full heave thrust until
/// `target_depth` or `max_time`. Every control period is logged.
std::vector<VehicleState> heave_trial(const VehicleParams& params, double target_depth = 1.5,
                                      double max_time = 1000.0);

/// Full yaw output for `duration` while the depth loop holds `depth`.
std::vector<VehicleState> yaw_trial(const VehicleParams& params, double depth = 0.5,
                                    double duration = 60.0);

/// Zero thrust from rest at `depth` with an initial roll.
std::vector<VehicleState> passive_roll_trial(const VehicleParams& params, double roll0,
                                             double duration = 30.0, double depth = 1.0);

/// Depth step from rest at the surface using the config gains.
std::vector<VehicleState> depth_step_trial(const VehicleParams& params, double target = 0.5,
                                           double duration = 60.0);

struct StepResponse {
    double reach_time = -1.0;      // first entry into the +-band, s; -1 if never
    double settle_time = -1.0;     // start of the final stay inside the band, s; -1 if never
    double overshoot = 0.0;        // m beyond the target
    double max_error_after = 0.0;  // max |error| over the final hold window
};

/// Band statistics of a depth step log. `hold_window` is the tail span over
/// which max_error_after is measured.
StepResponse analyze_step(const std::vector<VehicleState>& log, double target, double band,
                          double hold_window);

}  // namespace nemesys::vehicle

#pragma once

#include "vehicle/vehicle.hpp"

#include <json.hpp>

namespace nemesys::vehicle {

/// Standard trials for one configuration: controllability rank, full-thrust
/// heave and yaw rates, passive roll from 10 degrees and a 0.5 m depth step.
nlohmann::ordered_json characterize(const VehicleParams& params);

}  // namespace nemesys::vehicle

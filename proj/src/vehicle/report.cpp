#include "vehicle/report.hpp"

#include "vehicle/maneuvers.hpp"

#include <cmath>
#include <numbers>

namespace nemesys::vehicle {

nlohmann::ordered_json characterize(const VehicleParams& params)
{
    constexpr double deg = 180.0 / std::numbers::pi;
    const auto b = controllability_matrix(params);
    const auto heave = heave_trial(params);
    const auto yaw = yaw_trial(params);
    const auto roll = passive_roll_trial(params, 10.0 / deg);
    const auto step = depth_step_trial(params);
    const auto sr = analyze_step(step, 0.5, 0.03, 10.0);

    double peak_roll = 0.0;
    for (const auto& s : roll)
        peak_roll = std::max(peak_roll, std::abs(s.phi));

    nlohmann::ordered_json j;
    j["name"] = params.name;
    j["mass_kg"] = params.mass;
    j["net_buoyancy_n"] = params.net_buoyancy();
    j["metacentric_height_m"] = params.metacentric_height;
    j["thrusters"] = params.thrusters.size();
    j["controllability_rank"] = controllability_rank(b);
    j["heave_rate_mm_s"] = maneuver_metrics(heave).heave_rate_mm_s;
    j["heave_reached_depth"] = heave.back().z >= 1.5 - 1e-9;
    j["yaw_rate_deg_s"] = maneuver_metrics(yaw).yaw_rate_deg_s;
    j["passive_roll"] = {
        {"initial_deg", 10.0},
        {"final_deg", roll.back().phi * deg},
        {"peak_deg", peak_roll * deg},
        {"trend", std::abs(std::abs(roll.back().phi) * deg - 10.0) < 1e-6 ? "neutral"
                  : std::abs(roll.back().phi) * deg < 10.0                 ? "decays"
                                                                           : "grows"},
    };
    j["depth_step"] = {
        {"target_m", 0.5},
        {"band_m", 0.03},
        {"reach_time_s", sr.reach_time},
        {"settle_time_s", sr.settle_time},
        {"overshoot_m", sr.overshoot},
        {"max_error_final_10s_m", sr.max_error_after},
    };
    return j;
}

}  // namespace nemesys::vehicle

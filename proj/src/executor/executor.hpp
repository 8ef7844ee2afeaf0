#pragma once

#include "common/bits.hpp"
#include "link/mission_link.hpp"
#include "planning/pattern.hpp"
#include "vehicle/vehicle.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nemesys::executor {

enum class MissionPhase { idle, executing, re_tasked, completed, command_rejected };

const char* to_string(MissionPhase p);
bool is_legal_transition(MissionPhase from, MissionPhase to);

struct GuidanceParams {
    double dt = 0.01;
    double arrival_radius = 0.3;
    double yaw_kp = 1.5;
    double yaw_rate_kp = 2.0;
    double max_yaw_rate = 0.5;
    double surge_kp = 20.0;

    static GuidanceParams from_ini(std::string_view text);
};

/// Everything the executor needs, loaded from the shipped configs by default.
struct ExecutorConfig {
    vehicle::VehicleParams vehicle;
    mission::QuantTable table;
    planning::PlanOptions planning;
    GuidanceParams guidance;
    link::SyncOptions sync;

    /// Shipped files (or the same names under `dir`) for a vehicle configuration.
    static ExecutorConfig shipped(int vehicle_configuration = 3,
                                  const std::optional<std::filesystem::path>& dir = {});
};

struct CommandLogEntry {
    double t = 0.0;
    link::Disposition disposition = link::Disposition::frame_fail;
    std::optional<mission::MissionCommand> command;
    std::string reason;
    /// Plan started by this command, 0 if none.
    int plan_id = 0;
};

struct Snapshot {
    double t = 0.0;
    MissionPhase phase = MissionPhase::idle;
    vehicle::VehicleState vehicle;
    int plan_id = 0;  // 0 before any plan
    std::optional<mission::PatternType> pattern;
    int waypoint_index = -1;
    int waypoint_count = 0;
    std::optional<link::Disposition> last_disposition;
    std::string last_reason;
    std::size_t commands_logged = 0;
};

/// Online mission state machine: packets in, waypoint plan, vehicle control out.
/// Single owner; callers serialize submit_packet, tick and snapshot.
class MissionExecutor {
public:
    explicit MissionExecutor(ExecutorConfig config = ExecutorConfig::shipped(),
                             vehicle::VehicleState initial = {});

    /// deframe -> BCH -> payload -> plan from the current pose. A packet with
    /// no sync candidate only updates the last disposition; every other
    /// outcome is appended to the command log.
    link::Disposition submit_packet(BitSpan raw);

    /// Apply an already decoded command as if received CLEAN.
    link::Disposition submit_command(const mission::MissionCommand& cmd);

    /// One control period. dt defaults to the guidance period.
    void tick(std::optional<double> dt = {});

    Snapshot snapshot() const;
    MissionPhase phase() const { return m_phase; }
    const vehicle::VehicleState& vehicle() const { return m_state; }
    const std::optional<planning::WaypointPlan>& plan() const { return m_plan; }
    const std::vector<CommandLogEntry>& command_log() const { return m_log; }
    /// Link-level result of the most recent submit_packet.
    const std::optional<link::Reception>& last_reception() const { return m_last_reception; }
    const ExecutorConfig& config() const { return m_config; }
    const link::MissionLink& link() const { return m_link; }

    /// "t,phase,x,y,z,psi,wp_index,plan_id" rows, one per tick plus the initial state.
    const std::string& trajectory_log() const { return m_trajectory; }
    std::string command_log_csv() const;

private:
    void set_phase(MissionPhase next);
    void accept(const link::Reception& rx);
    void reject(const link::Reception& rx);
    void record_row();
    vehicle::ThrustAllocation control(double dt);

    ExecutorConfig m_config;
    link::MissionLink m_link;
    vehicle::VehicleState m_state;
    MissionPhase m_phase = MissionPhase::idle;
    MissionPhase m_resume_phase = MissionPhase::idle;
    std::optional<planning::WaypointPlan> m_plan;
    int m_plan_id = 0;
    int m_next_plan_id = 1;
    std::size_t m_wp = 0;
    double m_hold_elapsed = 0.0;
    double m_hold_depth = 0.0;
    double m_hold_yaw = 0.0;
    std::optional<link::Reception> m_last_reception;
    std::optional<link::Disposition> m_last_disposition;
    std::string m_last_reason;
    std::vector<CommandLogEntry> m_log;
    std::string m_trajectory;
};

/// A packet to submit at a simulation time.
struct ScheduledPacket {
    double t = 0.0;
    BitVector packet;
};

/// Lines "<t> hex <25 hex digits>" or "<t> spec <command spec>"; '#' starts a
/// comment. Throws std::invalid_argument naming the line.
std::vector<ScheduledPacket> parse_schedule(std::string_view text, const link::MissionLink& link);

/// Tick until `duration`, submitting each packet before the first tick that
/// starts at or after its time.
void run_schedule(MissionExecutor& ex, const std::vector<ScheduledPacket>& schedule, double duration);

}  // namespace nemesys::executor

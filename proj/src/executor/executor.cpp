#include "executor/executor.hpp"

#include "common/config.hpp"
#include "mission/command_spec.hpp"
#include "mission/payload_codec.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nemesys::executor {

using link::Disposition;
using vehicle::Wrench;

const char* to_string(MissionPhase p)
{
    switch (p) {
    case MissionPhase::idle:
        return "idle";
    case MissionPhase::executing:
        return "executing";
    case MissionPhase::re_tasked:
        return "re_tasked";
    case MissionPhase::completed:
        return "completed";
    case MissionPhase::command_rejected:
        return "command_rejected";
    }
    return "?";
}

bool is_legal_transition(MissionPhase from, MissionPhase to)
{
    using P = MissionPhase;
    if (to == P::command_rejected)
        return from != P::command_rejected;
    switch (from) {
    case P::idle:
        return to == P::executing;
    case P::executing:
        return to == P::re_tasked || to == P::completed;
    case P::re_tasked:
        return to == P::executing;
    case P::completed:
        return to == P::executing;
    case P::command_rejected:
        return true;  // resumes whatever was interrupted
    }
    return false;
}

GuidanceParams GuidanceParams::from_ini(std::string_view text)
{
    const auto tree = config::parse_ini(text);
    GuidanceParams g;
    g.dt = tree.get<double>("guidance.dt", g.dt);
    g.arrival_radius = tree.get<double>("guidance.arrival_radius", g.arrival_radius);
    g.yaw_kp = tree.get<double>("guidance.yaw_kp", g.yaw_kp);
    g.yaw_rate_kp = tree.get<double>("guidance.yaw_rate_kp", g.yaw_rate_kp);
    g.max_yaw_rate = tree.get<double>("guidance.max_yaw_rate", g.max_yaw_rate);
    g.surge_kp = tree.get<double>("guidance.surge_kp", g.surge_kp);
    if (!(g.dt > 0.0 && g.dt <= 0.1))
        throw std::runtime_error("guidance.dt must be in (0, 0.1]");
    if (!(g.arrival_radius > 0.0) || !(g.max_yaw_rate > 0.0))
        throw std::runtime_error("guidance.arrival_radius and max_yaw_rate must be positive");
    if (g.yaw_kp < 0.0 || g.yaw_rate_kp < 0.0 || g.surge_kp < 0.0)
        throw std::runtime_error("guidance gains must be non-negative");
    return g;
}

ExecutorConfig ExecutorConfig::shipped(int vehicle_configuration, const std::optional<std::filesystem::path>& dir)
{
    const auto mission_ini = config::load_text("mission.ini", dir);
    return {vehicle::VehicleParams::shipped(vehicle_configuration, dir),
            mission::QuantTable::parse(config::load_text(mission::QuantTable::kFileName, dir)),
            planning::PlanOptions::from_ini(mission_ini), GuidanceParams::from_ini(mission_ini),
            link::SyncOptions{}};
}

MissionExecutor::MissionExecutor(ExecutorConfig config, vehicle::VehicleState initial)
    : m_config(std::move(config)), m_link(m_config.table, m_config.sync), m_state(initial),
      m_hold_depth(initial.z), m_hold_yaw(initial.psi)
{
    m_config.vehicle.validate();
    m_config.table.require_version();
    m_trajectory = "t,phase,x,y,z,psi,wp_index,plan_id\n";
    record_row();
}

void MissionExecutor::set_phase(MissionPhase next)
{
    if (!is_legal_transition(m_phase, next))
        throw std::logic_error(fmt::format("illegal phase transition {} -> {}", to_string(m_phase),
                                           to_string(next)));
    m_phase = next;
}

Disposition MissionExecutor::submit_packet(BitSpan raw)
{
    const auto rx = m_link.receive(raw);
    m_last_reception = rx;
    if (rx.disposition == Disposition::frame_fail) {
        m_last_disposition = rx.disposition;
        m_last_reason = rx.reason;
        return rx.disposition;
    }
    if (link::accepted(rx.disposition))
        accept(rx);
    else
        reject(rx);
    return m_last_disposition.value();
}

Disposition MissionExecutor::submit_command(const mission::MissionCommand& cmd)
{
    link::Reception rx;
    rx.disposition = Disposition::clean;
    rx.command = cmd;
    try {
        mission::validate(cmd, m_config.table);
    } catch (const mission::CommandError& e) {
        rx.disposition = Disposition::malformed;
        rx.reason = e.what();
        reject(rx);
        return rx.disposition;
    }
    accept(rx);
    return m_last_disposition.value();
}

void MissionExecutor::accept(const link::Reception& rx)
{
    const planning::Pose origin{m_state.x, m_state.y, m_state.psi};
    planning::WaypointPlan plan;
    try {
        plan = planning::generate_waypoints(*rx.command, m_config.table, origin, m_config.planning);
    } catch (const planning::PlanError& e) {
        auto bad = rx;
        bad.disposition = Disposition::malformed;
        bad.reason = std::string("plan: ") + e.what();
        reject(bad);
        return;
    }

    if (m_phase == MissionPhase::command_rejected)
        set_phase(m_resume_phase);
    switch (m_phase) {
    case MissionPhase::idle:
    case MissionPhase::completed:
        set_phase(MissionPhase::executing);
        break;
    case MissionPhase::executing:
        set_phase(MissionPhase::re_tasked);
        break;
    default:
        break;  // already re_tasked: the newer plan replaces the pending one
    }
    m_plan = std::move(plan);
    m_plan_id = m_next_plan_id++;
    m_wp = 0;
    m_hold_elapsed = 0.0;
    m_last_disposition = rx.disposition;
    m_last_reason = rx.reason;
    m_log.push_back({m_state.t, rx.disposition, rx.command, rx.reason, m_plan_id});
}

void MissionExecutor::reject(const link::Reception& rx)
{
    if (m_phase != MissionPhase::command_rejected) {
        m_resume_phase = m_phase;
        set_phase(MissionPhase::command_rejected);
    }
    m_last_disposition = rx.disposition;
    m_last_reason = rx.reason;
    m_log.push_back({m_state.t, rx.disposition, rx.command, rx.reason, 0});
}

vehicle::ThrustAllocation MissionExecutor::control(double dt)
{
    const auto& g = m_config.guidance;
    const auto& vp = m_config.vehicle;

    if (m_plan && m_phase == MissionPhase::executing) {
        const auto& wps = m_plan->waypoints;
        const auto& wp = wps[m_wp];
        const double dist = std::hypot(wp.x - m_state.x, wp.y - m_state.y);
        bool advance = false;
        if (wp.hold_s > 0.0) {
            if (dist <= g.arrival_radius || m_hold_elapsed > 0.0) {
                m_hold_elapsed += dt;
                advance = m_hold_elapsed >= wp.hold_s - 1e-9;
            }
        } else if (dist <= g.arrival_radius) {
            advance = true;
        } else if (m_wp > 0) {
            const auto& prev = wps[m_wp - 1];
            advance = (m_state.x - wp.x) * (wp.x - prev.x) + (m_state.y - wp.y) * (wp.y - prev.y) > 0.0;
        }
        if (advance && m_wp + 1 == wps.size()) {
            m_hold_depth = wp.depth;
            m_hold_yaw = wp.heading_hint ? planning::heading_to_yaw(*wp.heading_hint) : m_state.psi;
            set_phase(MissionPhase::completed);
        } else if (advance) {
            ++m_wp;
            m_hold_elapsed = 0.0;
        }
    }

    double depth = m_hold_depth;
    double yaw = m_hold_yaw;
    double speed = 0.0;
    if (m_plan && m_phase == MissionPhase::executing) {
        const auto& wp = m_plan->waypoints[m_wp];
        const double dx = wp.x - m_state.x;
        const double dy = wp.y - m_state.y;
        const double dist = std::hypot(dx, dy);
        const bool holding = wp.hold_s > 0.0 && m_hold_elapsed > 0.0;
        depth = wp.depth;
        if (holding && wp.heading_hint)
            yaw = planning::heading_to_yaw(*wp.heading_hint);
        else if (dist > 1e-6)
            yaw = std::atan2(dy, dx);
        else
            yaw = m_state.psi;
        const double err = std::remainder(yaw - m_state.psi, 2.0 * M_PI);
        const double cruise = wp.hold_s > 0.0 ? std::min(0.3, 0.5 * dist) : wp.speed;
        speed = holding ? 0.0 : cruise * std::max(0.0, std::cos(err));
    }

    const double err = std::remainder(yaw - m_state.psi, 2.0 * M_PI);
    const double r_cmd = std::clamp(g.yaw_kp * err, -g.max_yaw_rate, g.max_yaw_rate);
    Wrench lateral;
    lateral.yaw = vp.yaw_drag.force(r_cmd) + g.yaw_rate_kp * (r_cmd - m_state.r);
    lateral.surge = vp.surge_drag.force(speed) + g.surge_kp * (speed - m_state.u);
    return vehicle::pd_depth_control(m_state, depth, vp, vp.gains.depth_kp, vp.gains.depth_kd, lateral);
}

void MissionExecutor::tick(std::optional<double> dt)
{
    const double step = dt.value_or(m_config.guidance.dt);
    if (!(step > 0.0 && step <= 0.1))
        throw std::invalid_argument("tick: dt must be in (0, 0.1] s");
    if (m_phase == MissionPhase::command_rejected)
        set_phase(m_resume_phase);
    if (m_phase == MissionPhase::re_tasked)
        set_phase(MissionPhase::executing);
    const auto alloc = control(step);
    m_state = vehicle::step_dynamics(m_state, alloc, m_config.vehicle, step);
    record_row();
}

void MissionExecutor::record_row()
{
    const int wp = m_plan ? static_cast<int>(m_wp) : -1;
    m_trajectory += fmt::format("{:.3f},{},{:.4f},{:.4f},{:.4f},{:.4f},{},{}\n", m_state.t, to_string(m_phase),
                                m_state.x, m_state.y, m_state.z, m_state.psi, wp, m_plan_id);
}

Snapshot MissionExecutor::snapshot() const
{
    Snapshot s;
    s.t = m_state.t;
    s.phase = m_phase;
    s.vehicle = m_state;
    s.plan_id = m_plan_id;
    if (m_plan) {
        s.pattern = m_plan->pattern;
        s.waypoint_index = static_cast<int>(m_wp);
        s.waypoint_count = static_cast<int>(m_plan->waypoints.size());
    }
    s.last_disposition = m_last_disposition;
    s.last_reason = m_last_reason;
    s.commands_logged = m_log.size();
    return s;
}

std::string MissionExecutor::command_log_csv() const
{
    const auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::string out = "t,disposition,plan_id,command,reason\n";
    for (const auto& e : m_log)
        out += fmt::format("{:.3f},{},{},{},{}\n", e.t, link::disposition_code(e.disposition), e.plan_id,
                           e.command ? quote(mission::format_spec(*e.command, m_config.table)) : "",
                           quote(e.reason));
    return out;
}

std::vector<ScheduledPacket> parse_schedule(std::string_view text, const link::MissionLink& link)
{
    std::vector<ScheduledPacket> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string time_text;
        std::string kind;
        if (!(fields >> time_text))
            continue;
        const auto fail = [&](const std::string& why) {
            return std::invalid_argument(fmt::format("schedule line {}: {}", number, why));
        };
        ScheduledPacket entry;
        try {
            std::size_t used = 0;
            entry.t = std::stod(time_text, &used);
            if (used != time_text.size() || !std::isfinite(entry.t) || entry.t < 0.0)
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw fail("bad time '" + time_text + "'");
        }
        if (!(fields >> kind))
            throw fail("expected 'hex' or 'spec' after the time");
        std::string rest;
        std::getline(fields, rest);
        try {
            if (kind == "hex")
                entry.packet = link::packet_from_hex(rest);
            else if (kind == "spec")
                entry.packet = link.encode_packet(mission::parse_spec(rest, link.table()));
            else
                throw fail("unknown entry kind '" + kind + "'");
        } catch (const std::invalid_argument& e) {
            if (std::string_view(e.what()).starts_with("schedule line"))
                throw;
            throw fail(e.what());
        } catch (const mission::CommandError& e) {
            throw fail(e.what());
        }
        if (!out.empty() && entry.t < out.back().t)
            throw fail("times must be non-decreasing");
        out.push_back(std::move(entry));
    }
    return out;
}

void run_schedule(MissionExecutor& ex, const std::vector<ScheduledPacket>& schedule, double duration)
{
    std::size_t next = 0;
    const double dt = ex.config().guidance.dt;
    const auto steps = static_cast<long>(std::llround(duration / dt));
    for (long k = 0; k < steps; ++k) {
        while (next < schedule.size() && schedule[next].t <= ex.vehicle().t + 1e-9)
            ex.submit_packet(schedule[next++].packet);
        ex.tick();
    }
}

}  // namespace nemesys::executor

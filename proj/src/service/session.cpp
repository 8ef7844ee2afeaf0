#include "service/session.hpp"

#include "channel/channel.hpp"
#include "link/report.hpp"
#include "mission/command_spec.hpp"
#include "mission/payload_codec.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace nemesys::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json error_frame(std::string code, std::string message, const json& reply_id = {})
{
    ordered_json j{{"type", "error"}, {"code", std::move(code)}, {"message", std::move(message)}};
    if (!reply_id.is_null())
        j["in_reply_to"] = reply_id;
    return j;
}

ordered_json ack(std::string_view request, const json& reply_id)
{
    ordered_json j{{"type", "ack"}, {"request", request}};
    if (!reply_id.is_null())
        j["in_reply_to"] = reply_id;
    return j;
}

bool mutates(std::string_view type)
{
    return type == "send_command" || type == "set_ber" || type == "pause" || type == "resume" ||
           type == "reset";
}

/// Command spec text from either {"command": "..."} or {"pattern", "params"}.
std::string command_text(const json& msg)
{
    if (msg.contains("command")) {
        if (!msg["command"].is_string())
            throw std::invalid_argument("'command' must be a string");
        return msg["command"].get<std::string>();
    }
    if (!msg.contains("pattern") || !msg["pattern"].is_string())
        throw std::invalid_argument("send_command needs 'command' or 'pattern'");
    std::string text = msg["pattern"].get<std::string>();
    if (msg.contains("params")) {
        if (!msg["params"].is_object())
            throw std::invalid_argument("'params' must be an object");
        for (const auto& [name, value] : msg["params"].items()) {
            if (value.is_number())
                text += fmt::format(" {}={:.10g}", name, value.get<double>());
            else if (value.is_string())
                text += fmt::format(" {}={}", name, value.get<std::string>());
            else
                throw std::invalid_argument("parameter '" + name + "' must be a number or string");
        }
    }
    return text;
}

}  // namespace

void SessionConfig::validate() const
{
    if (vehicle_config < 1 || vehicle_config > 3)
        throw std::invalid_argument("vehicle config must be 1, 2 or 3");
    if (!(ber >= 0.0 && ber <= 1.0))
        throw std::invalid_argument("BER must be in [0, 1]");
    if (!(realtime_factor >= 0.0) || !std::isfinite(realtime_factor))
        throw std::invalid_argument("realtime factor must be >= 0");
}

Session::Session(SessionConfig config)
    : m_config(std::move(config)),
      m_exec_config((m_config.validate(), executor::ExecutorConfig::shipped(m_config.vehicle_config, m_config.config_dir)))
{
    m_ber = m_config.ber;
    reset(m_config.seed);
    m_epoch = 0;
}

void Session::reset(std::uint64_t seed)
{
    m_executor = std::make_unique<executor::MissionExecutor>(m_exec_config);
    m_seed = seed;
    m_send_index = 0;
    m_ticks = 0;
    ++m_epoch;
}

ordered_json Session::hello() const
{
    return {
        {"type", "hello"},
        {"protocol", kProtocolName},
        {"version", kProtocolVersion},
        {"session",
         {{"vehicle_config", m_config.vehicle_config},
          {"ber", m_ber},
          {"seed", m_seed},
          {"realtime_factor", m_config.realtime_factor},
          {"dt", m_exec_config.guidance.dt},
          {"telemetry_hz", 1.0 / (m_exec_config.guidance.dt * kTelemetryEveryTicks)},
          {"paused", m_paused}}},
        {"quant_table", link::quant_table_json(m_exec_config.table)},
    };
}

ordered_json Session::telemetry() const
{
    const auto s = m_executor->snapshot();
    ordered_json j{
        {"type", "telemetry"},
        {"epoch", m_epoch},
        {"tick", m_ticks},
        {"t", s.t},
        {"phase", executor::to_string(s.phase)},
        {"x", s.vehicle.x},
        {"y", s.vehicle.y},
        {"z", s.vehicle.z},
        {"phi", s.vehicle.phi},
        {"psi", s.vehicle.psi},
        {"u", s.vehicle.u},
        {"w", s.vehicle.w},
        {"r", s.vehicle.r},
        {"plan_id", s.plan_id},
        {"pattern", s.pattern ? ordered_json(mission::pattern_name(*s.pattern)) : ordered_json()},
        {"wp_index", s.waypoint_index},
        {"wp_count", s.waypoint_count},
        {"last_disposition", s.last_disposition ? ordered_json(link::disposition_code(*s.last_disposition)) : ordered_json()},
        {"ber", m_ber},
        {"paused", m_paused},
    };
    return j;
}

ordered_json Session::plan_frame() const
{
    const auto& plan = m_executor->plan();
    ordered_json j{{"type", "plan"}, {"plan_id", m_executor->snapshot().plan_id}};
    if (!plan) {
        j["pattern"] = nullptr;
        j["waypoints"] = ordered_json::array();
        return j;
    }
    j["pattern"] = mission::pattern_name(plan->pattern);
    j["closed"] = plan->closed;
    j["est_duration"] = plan->est_duration;
    auto wps = ordered_json::array();
    for (const auto& w : plan->waypoints) {
        ordered_json p{{"x", w.x}, {"y", w.y}, {"depth", w.depth}, {"speed", w.speed}};
        if (w.hold_s > 0.0)
            p["hold_s"] = w.hold_s;
        if (w.heading_hint)
            p["heading"] = *w.heading_hint;
        wps.push_back(std::move(p));
    }
    j["waypoints"] = std::move(wps);
    return j;
}

ordered_json Session::token_frame() const
{
    return {{"type", "token"}, {"holder", m_token ? ordered_json(*m_token) : ordered_json()}};
}

std::vector<Outgoing> Session::connect(ClientId client)
{
    auto h = hello();
    h["client_id"] = client;
    std::vector<Outgoing> out{{client, std::move(h)}, {client, token_frame()}};
    if (m_executor->plan())
        out.push_back({client, plan_frame()});
    out.push_back({client, telemetry()});
    return out;
}

std::vector<Outgoing> Session::disconnect(ClientId client)
{
    if (m_token != client)
        return {};
    m_token.reset();
    return {{std::nullopt, token_frame()}};
}

std::vector<Outgoing> Session::handle(ClientId client, std::string_view text)
{
    json msg;
    try {
        msg = json::parse(text);
    } catch (const json::parse_error& e) {
        return {{client, error_frame("bad_json", e.what())}};
    }
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string())
        return {{client, error_frame("bad_message", "expected an object with a string 'type'")}};
    const auto type = msg["type"].get<std::string>();
    const json reply_id = msg.contains("id") ? msg["id"] : json();

    if (type == "hello") {
        if (msg.contains("version") && msg["version"] != kProtocolVersion)
            return {{client, error_frame("version_mismatch",
                                         fmt::format("server speaks version {}", kProtocolVersion), reply_id)}};
        auto h = hello();
        h["client_id"] = client;
        return {{client, std::move(h)}};
    }
    if (type == "acquire_token") {
        if (m_token && m_token != client)
            return {{client, error_frame("token_held", fmt::format("client {} holds the command token", *m_token), reply_id)}};
        m_token = client;
        return {{client, ack(type, reply_id)}, {std::nullopt, token_frame()}};
    }
    if (type == "release_token") {
        if (m_token != client)
            return {{client, error_frame("no_token", "this client does not hold the command token", reply_id)}};
        m_token.reset();
        return {{client, ack(type, reply_id)}, {std::nullopt, token_frame()}};
    }
    if (type == "get_plan")
        return {{client, plan_frame()}};
    if (!mutates(type))
        return {{client, error_frame("unknown_type", "unknown message type '" + type + "'", reply_id)}};

    std::vector<Outgoing> out;
    if (!m_token) {
        m_token = client;
        out.push_back({std::nullopt, token_frame()});
    } else if (m_token != client) {
        return {{client, error_frame("token_held", fmt::format("client {} holds the command token", *m_token), reply_id)}};
    }
    auto more = apply(client, msg);
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    return out;
}

std::vector<Outgoing> Session::apply(std::optional<ClientId> client, const json& msg)
{
    const auto type = msg["type"].get<std::string>();
    const json reply_id = msg.contains("id") ? msg["id"] : json();
    const auto reply = [&](ordered_json j) -> std::vector<Outgoing> { return {{client, std::move(j)}}; };

    json record = msg;
    record.erase("id");
    const auto journal = [&] { m_journal.push_back({m_ticks, record.dump()}); };

    if (type == "send_command")
        return send_command(msg, reply_id);
    if (type == "set_ber") {
        if (!msg.contains("value") || !msg["value"].is_number())
            return reply(error_frame("bad_message", "set_ber needs a numeric 'value'", reply_id));
        const double v = msg["value"].get<double>();
        if (!(v >= 0.0 && v <= 1.0))
            return reply(error_frame("out_of_range", "BER must be in [0, 1]", reply_id));
        journal();
        m_ber = v;
        auto a = ack(type, reply_id);
        a["ber"] = v;
        return {{client, a}, {std::nullopt, telemetry()}};
    }
    if (type == "pause" || type == "resume") {
        journal();
        m_paused = type == "pause";
        return {{client, ack(type, reply_id)}, {std::nullopt, telemetry()}};
    }
    // reset
    std::uint64_t seed = m_config.seed;
    if (msg.contains("seed")) {
        if (!msg["seed"].is_number_unsigned())
            return reply(error_frame("bad_message", "reset 'seed' must be a non-negative integer", reply_id));
        seed = msg["seed"].get<std::uint64_t>();
    }
    journal();
    reset(seed);
    auto a = ack(type, reply_id);
    a["seed"] = seed;
    return {{client, a}, {std::nullopt, plan_frame()}, {std::nullopt, telemetry()}};
}

std::vector<Outgoing> Session::send_command(const json& msg, const json& reply_id)
{
    std::vector<Outgoing> out;
    mission::MissionCommand cmd;
    try {
        cmd = mission::parse_spec(command_text(msg), m_exec_config.table);
    } catch (const mission::CommandError& e) {
        auto err = error_frame("invalid_command", e.what(), reply_id);
        err["kind"] = mission::to_string(e.kind());
        if (e.slot() > 0)
            err["slot"] = e.slot();
        return {{m_token, std::move(err)}};
    } catch (const std::invalid_argument& e) {
        return {{m_token, error_frame("bad_message", e.what(), reply_id)}};
    }
    json record{{"type", "send_command"}, {"command", mission::format_spec(cmd, m_exec_config.table)}};
    m_journal.push_back({m_ticks, record.dump()});

    const int plan_before = m_executor->snapshot().plan_id;
    const auto sent = m_executor->link().encode_packet(cmd);
    const channel::ChannelModel model{m_ber, channel::derive_seed(m_seed, {m_send_index})};
    const auto received = channel::apply_noise(model, sent);
    const auto disposition = m_executor->submit_packet(received);

    ordered_json d{{"type", "disposition"},
                   {"send_index", m_send_index},
                   {"t", m_executor->vehicle().t},
                   {"disposition", link::disposition_code(disposition)},
                   {"sent", mission::format_spec(cmd, m_exec_config.table)},
                   {"packet_sent", link::packet_to_hex(sent)},
                   {"packet_received", link::packet_to_hex(received)},
                   {"bit_errors", hamming_distance(sent, received)},
                   {"ber", m_ber}};
    if (const auto& rx = m_executor->last_reception()) {
        d["decoded"] = rx->command ? ordered_json(mission::format_spec(*rx->command, m_exec_config.table)) : ordered_json();
        d["corrected_positions"] = rx->corrected_positions;
        d["reason"] = m_executor->snapshot().last_reason;
    }
    if (!reply_id.is_null())
        d["in_reply_to"] = reply_id;
    ++m_send_index;
    out.push_back({std::nullopt, std::move(d)});
    if (m_executor->snapshot().plan_id != plan_before)
        out.push_back({std::nullopt, plan_frame()});
    return out;
}

std::vector<Outgoing> Session::advance(std::uint64_t ticks)
{
    std::vector<Outgoing> out;
    if (m_paused)
        return out;
    for (std::uint64_t i = 0; i < ticks; ++i) {
        const auto phase_before = m_executor->phase();
        m_executor->tick();
        ++m_ticks;
        if (m_ticks % kTelemetryEveryTicks == 0 || m_executor->phase() != phase_before)
            out.push_back({std::nullopt, telemetry()});
    }
    return out;
}

Session Session::replay(const SessionConfig& config, const std::vector<JournalEntry>& journal)
{
    Session s(config);
    for (const auto& e : journal) {
        const auto msg = json::parse(e.message);
        if (e.tick < s.m_ticks)
            throw std::invalid_argument("journal ticks go backwards");
        s.advance(e.tick - s.m_ticks);
        s.apply(std::nullopt, msg);
    }
    return s;
}

}  // namespace nemesys::service

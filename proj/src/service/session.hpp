#pragma once

#include "executor/executor.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nemesys::service {

/// Wire protocol version announced in the hello frame.
inline constexpr int kProtocolVersion = 1;
inline constexpr const char* kProtocolName = "nemesys-console";

/// Telemetry is published every this many control periods of simulated time.
inline constexpr std::uint64_t kTelemetryEveryTicks = 10;

struct SessionConfig {
    int vehicle_config = 3;
    double ber = 0.0;
    std::uint64_t seed = 1;
    /// Simulated seconds per wall second; 0 runs as fast as possible.
    double realtime_factor = 1.0;
    std::optional<std::filesystem::path> config_dir;

    /// Throws std::invalid_argument.
    void validate() const;
};

using ClientId = std::uint64_t;

struct Outgoing {
    /// std::nullopt broadcasts to every connected client.
    std::optional<ClientId> to;
    nlohmann::ordered_json message;
};

/// A state-changing client message and the tick before which it was applied.
struct JournalEntry {
    std::uint64_t tick = 0;
    std::string message;
};

/// One mission session: an executor, a noisy channel in front of it and the
/// command token. Deterministic given its config and the journal; transport
/// lives elsewhere.
class Session {
public:
    explicit Session(SessionConfig config);

    /// Hello for a new client plus the active plan, if any.
    std::vector<Outgoing> connect(ClientId client);
    /// Releases the token if the client held it.
    std::vector<Outgoing> disconnect(ClientId client);
    /// One client text frame. Malformed input yields an error frame to the sender.
    std::vector<Outgoing> handle(ClientId client, std::string_view text);
    /// Advance the simulation unless paused; emits telemetry frames.
    std::vector<Outgoing> advance(std::uint64_t ticks);

    nlohmann::ordered_json hello() const;
    nlohmann::ordered_json telemetry() const;

    bool paused() const { return m_paused; }
    double ber() const { return m_ber; }
    double realtime_factor() const { return m_config.realtime_factor; }
    std::uint64_t ticks() const { return m_ticks; }
    std::optional<ClientId> token_holder() const { return m_token; }
    const executor::MissionExecutor& executor() const { return *m_executor; }
    const std::vector<JournalEntry>& journal() const { return m_journal; }

    /// Rebuild a session by re-applying a journal to a fresh one.
    static Session replay(const SessionConfig& config, const std::vector<JournalEntry>& journal);

private:
    std::vector<Outgoing> apply(std::optional<ClientId> client, const nlohmann::json& msg);
    std::vector<Outgoing> send_command(const nlohmann::json& msg, const nlohmann::json& reply_id);
    nlohmann::ordered_json plan_frame() const;
    nlohmann::ordered_json token_frame() const;
    void reset(std::uint64_t seed);

    SessionConfig m_config;
    executor::ExecutorConfig m_exec_config;
    std::unique_ptr<executor::MissionExecutor> m_executor;
    double m_ber = 0.0;
    std::uint64_t m_seed = 0;
    std::uint64_t m_send_index = 0;
    std::uint64_t m_ticks = 0;
    std::uint64_t m_epoch = 0;
    bool m_paused = false;
    std::optional<ClientId> m_token;
    std::vector<JournalEntry> m_journal;
};

}  // namespace nemesys::service

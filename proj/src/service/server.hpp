#pragma once

#include "service/session.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace nemesys::service {

struct ServerOptions {
    std::string address = "127.0.0.1";
    /// 0 picks an ephemeral port.
    std::uint16_t port = 8765;
    /// Per-connection outbound queue length beyond which telemetry is dropped.
    std::size_t max_queue = 256;
    /// Tick budget per timer fire when running unthrottled.
    std::uint64_t unthrottled_ticks = 200;
};

/// WebSocket front end for one Session. All session access happens on a
/// single io_context thread owned by the server.
class Server {
public:
    Server(SessionConfig session, ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and starts the worker thread. Throws std::runtime_error on bind failure.
    void start();
    void stop();
    /// Block until stop() is called from another thread or a signal handler.
    void wait();
    std::uint16_t port() const;
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> m_impl;
};

}  // namespace nemesys::service

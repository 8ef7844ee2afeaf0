#include "service/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

namespace nemesys::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class Connection;

/// Shared between the acceptor, the timer and every connection; only touched
/// on the io_context thread.
struct Hub {
    Session session;
    ServerOptions options;
    std::map<ClientId, std::shared_ptr<Connection>> clients;
    ClientId next_id = 1;

    void dispatch(std::vector<Outgoing> out);
};

class Connection : public std::enable_shared_from_this<Connection> {
public:
    Connection(tcp::socket socket, Hub& hub, ClientId id)
        : m_ws(std::move(socket)), m_hub(hub), m_id(id)
    {
    }

    void run()
    {
        m_ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        m_ws.text(true);
        m_ws.async_accept([self = shared_from_this()](beast::error_code ec) {
            if (ec)
                return;
            self->m_open = true;
            self->m_hub.clients[self->m_id] = self;
            self->m_hub.dispatch(self->m_hub.session.connect(self->m_id));
            self->read();
        });
    }

    void send(const nlohmann::ordered_json& msg)
    {
        if (!m_open)
            return;
        if (m_queue.size() >= m_hub.options.max_queue && msg.value("type", "") == "telemetry")
            return;
        m_queue.push_back(msg.dump());
        if (m_queue.size() == 1)
            write();
    }

    void close()
    {
        if (!m_open)
            return;
        m_open = false;
        beast::error_code ec;
        m_ws.next_layer().shutdown(tcp::socket::shutdown_both, ec);
        m_ws.next_layer().close(ec);
    }

private:
    void read()
    {
        m_ws.async_read(m_buffer, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->drop();
                return;
            }
            const auto text = beast::buffers_to_string(self->m_buffer.data());
            self->m_buffer.consume(self->m_buffer.size());
            self->m_hub.dispatch(self->m_hub.session.handle(self->m_id, text));
            self->read();
        });
    }

    void write()
    {
        m_ws.async_write(asio::buffer(m_queue.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->drop();
                return;
            }
            self->m_queue.pop_front();
            if (!self->m_queue.empty())
                self->write();
        });
    }

    void drop()
    {
        m_open = false;
        m_queue.clear();
        if (m_hub.clients.erase(m_id))
            m_hub.dispatch(m_hub.session.disconnect(m_id));
    }

    websocket::stream<tcp::socket> m_ws;
    beast::flat_buffer m_buffer;
    std::deque<std::string> m_queue;
    Hub& m_hub;
    ClientId m_id;
    bool m_open = false;
};

void Hub::dispatch(std::vector<Outgoing> out)
{
    for (auto& o : out) {
        if (o.to) {
            if (auto it = clients.find(*o.to); it != clients.end())
                it->second->send(o.message);
        } else {
            // copy: send() may drop a client and mutate the map
            auto targets = clients;
            for (auto& [id, c] : targets)
                c->send(o.message);
        }
    }
}

}  // namespace

struct Server::Impl {
    Impl(SessionConfig s, ServerOptions o) : hub{Session(std::move(s)), std::move(o), {}, 1} {}

    asio::io_context io;
    tcp::acceptor acceptor{io};
    asio::steady_timer timer{io};
    Hub hub;
    std::thread worker;
    std::atomic<bool> running{false};
    std::uint16_t bound_port = 0;
    std::chrono::steady_clock::time_point last_fire;
    double debt = 0.0;
    std::mutex mutex;
    std::condition_variable stopped;

    void accept()
    {
        acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec)
                return;
            const auto id = hub.next_id++;
            std::make_shared<Connection>(std::move(socket), hub, id)->run();
            accept();
        });
    }

    void arm()
    {
        timer.expires_after(std::chrono::milliseconds(10));
        timer.async_wait([this](beast::error_code ec) {
            if (ec)
                return;
            fire();
            arm();
        });
    }

    void fire()
    {
        const auto now = std::chrono::steady_clock::now();
        const double wall = std::chrono::duration<double>(now - last_fire).count();
        last_fire = now;
        auto& s = hub.session;
        if (s.paused()) {
            debt = 0.0;
            return;
        }
        std::uint64_t ticks;
        if (s.realtime_factor() == 0.0) {
            ticks = hub.options.unthrottled_ticks;
        } else {
            const double dt = s.executor().config().guidance.dt;
            debt += s.realtime_factor() * wall;
            ticks = static_cast<std::uint64_t>(debt / dt);
            debt -= static_cast<double>(ticks) * dt;
            // do not try to catch up after a long stall
            if (ticks > 1000) {
                ticks = 1000;
                debt = 0.0;
            }
        }
        hub.dispatch(s.advance(ticks));
    }
};

Server::Server(SessionConfig session, ServerOptions options)
    : m_impl(std::make_unique<Impl>(std::move(session), std::move(options)))
{
}

Server::~Server() { stop(); }

void Server::start()
{
    auto& im = *m_impl;
    if (im.running)
        return;
    beast::error_code ec;
    const auto addr = asio::ip::make_address(im.hub.options.address, ec);
    if (ec)
        throw std::runtime_error("bad listen address '" + im.hub.options.address + "': " + ec.message());
    const tcp::endpoint ep{addr, im.hub.options.port};
    im.acceptor.open(ep.protocol(), ec);
    if (!ec)
        im.acceptor.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec)
        im.acceptor.bind(ep, ec);
    if (!ec)
        im.acceptor.listen(asio::socket_base::max_listen_connections, ec);
    if (ec)
        throw std::runtime_error(fmt::format("cannot listen on {}:{}: {}", im.hub.options.address,
                                             im.hub.options.port, ec.message()));
    im.bound_port = im.acceptor.local_endpoint().port();
    im.last_fire = std::chrono::steady_clock::now();
    im.accept();
    im.arm();
    im.running = true;
    im.worker = std::thread([&im] { im.io.run(); });
}

void Server::stop()
{
    auto& im = *m_impl;
    if (!im.running.exchange(false))
        return;
    asio::post(im.io, [&im] {
        beast::error_code ec;
        im.acceptor.close(ec);
        im.timer.cancel();
        auto clients = im.hub.clients;
        for (auto& [id, c] : clients)
            c->close();
        im.hub.clients.clear();
        im.io.stop();
    });
    if (im.worker.joinable())
        im.worker.join();
    std::lock_guard lock(im.mutex);
    im.stopped.notify_all();
}

void Server::wait()
{
    auto& im = *m_impl;
    std::unique_lock lock(im.mutex);
    im.stopped.wait(lock, [&im] { return !im.running; });
}

std::uint16_t Server::port() const { return m_impl->bound_port; }

bool Server::running() const { return m_impl->running; }

}  // namespace nemesys::service

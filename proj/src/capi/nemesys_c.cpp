#include "nemesys/nemesys.h"

#include "channel/channel.hpp"
#include "channel/sweep.hpp"
#include "common/config.hpp"
#include "executor/executor.hpp"
#include "link/report.hpp"
#include "mission/command_spec.hpp"
#include "service/server.hpp"
#include "vehicle/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

using namespace nemesys;

struct nemesys_link {
    link::MissionLink link;
};

struct nemesys_sim {
    executor::MissionExecutor executor;
    double ber = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t sent = 0;
};

struct nemesys_service {
    nemesys_service(service::SessionConfig session, service::ServerOptions options)
        : server(std::move(session), std::move(options))
    {
    }
    service::Server server;
};

namespace {

thread_local std::string g_last_error;

struct ApiError : std::runtime_error {
    ApiError(nemesys_status s, const std::string& what) : std::runtime_error(what), status(s) {}
    nemesys_status status;
};

/// Run `f`, translating exceptions into a status and the thread's last error.
/// `runtime_status` is what a plain std::runtime_error maps to at this call.
template <typename F>
nemesys_status guarded(F&& f, nemesys_status runtime_status = NEMESYS_E_INTERNAL)
{
    try {
        f();
        g_last_error.clear();
        return NEMESYS_OK;
    } catch (const ApiError& e) {
        g_last_error = e.what();
        return e.status;
    } catch (const mission::CommandError& e) {
        g_last_error = e.what();
        return NEMESYS_E_COMMAND;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return NEMESYS_E_INVALID_ARGUMENT;
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return NEMESYS_E_INVALID_ARGUMENT;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return NEMESYS_E_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        g_last_error = e.what();
        return runtime_status;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NEMESYS_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return NEMESYS_E_INTERNAL;
    }
}

template <typename T>
T& need(T* p, const char* what)
{
    if (!p)
        throw ApiError(NEMESYS_E_INVALID_ARGUMENT, fmt::format("{} must not be NULL", what));
    return *p;
}

const char* need_str(const char* s, const char* what)
{
    if (!s)
        throw ApiError(NEMESYS_E_INVALID_ARGUMENT, fmt::format("{} must not be NULL", what));
    return s;
}

char* dup(std::string_view s)
{
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p)
        throw std::bad_alloc();
    std::memcpy(p, s.data(), s.size());
    p[s.size()] = '\0';
    return p;
}

void put(char** out, std::string_view s)
{
    if (out)
        *out = dup(s);
}

std::optional<std::filesystem::path> dir_of(const char* dir)
{
    if (!dir || !*dir)
        return std::nullopt;
    return std::filesystem::path(dir);
}

template <size_t N>
void copy_field(char (&dst)[N], std::string_view src)
{
    const auto n = std::min(src.size(), N - 1);
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

BitVector noisy(nemesys_sim& sim, BitSpan packet)
{
    const channel::ChannelModel model{sim.ber, channel::derive_seed(sim.seed, {sim.sent++})};
    return channel::apply_noise(model, packet);
}

}  // namespace

extern "C" {

const char* nemesys_last_error(void) { return g_last_error.c_str(); }

const char* nemesys_status_name(nemesys_status status)
{
    switch (status) {
    case NEMESYS_OK: return "ok";
    case NEMESYS_E_INVALID_ARGUMENT: return "invalid_argument";
    case NEMESYS_E_COMMAND: return "command";
    case NEMESYS_E_CONFIG: return "config";
    case NEMESYS_E_IO: return "io";
    case NEMESYS_E_STATE: return "state";
    case NEMESYS_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* nemesys_version(void) { return "0.1.0"; }

void nemesys_free_string(char* s) { std::free(s); }

nemesys_status nemesys_link_create(const char* config_dir, nemesys_link** out)
{
    return guarded(
        [&] {
            need(out, "out");
            auto table = mission::QuantTable::parse(
                config::load_text(mission::QuantTable::kFileName, dir_of(config_dir)));
            *out = new nemesys_link{link::MissionLink(std::move(table))};
        },
        NEMESYS_E_CONFIG);
}

void nemesys_link_destroy(nemesys_link* link) { delete link; }

nemesys_status nemesys_link_encode(const nemesys_link* link, const char* spec, char** hex_out,
                                   char** report_json)
{
    return guarded([&] {
        const auto& l = need(link, "link").link;
        const auto cmd = mission::parse_spec(std::string_view(need_str(spec, "spec")), l.table());
        const auto report = link::encode_report(l, cmd);
        put(hex_out, report["packet_hex"].get<std::string>());
        if (report_json)
            *report_json = dup(report.dump(2));
    });
}

nemesys_status nemesys_link_decode(const nemesys_link* link, const char* hex, char** report_json)
{
    return guarded([&] {
        const auto& l = need(link, "link").link;
        need(report_json, "report_json");
        const auto bits = from_hex(need_str(hex, "hex"));
        *report_json = dup(link::decode_report(l, l.receive(bits)).dump(2));
    });
}

nemesys_status nemesys_link_quant_table(const nemesys_link* link, char** json_out)
{
    return guarded([&] {
        const auto& l = need(link, "link").link;
        need(json_out, "json_out");
        *json_out = dup(link::quant_table_json(l.table()).dump(2));
    });
}

nemesys_status nemesys_sweep(const char* options_json, char** table_out, char** summary_json)
{
    return guarded([&] {
        channel::SweepOptions o;
        if (options_json && *options_json) {
            const auto j = nlohmann::json::parse(options_json);
            if (!j.is_object())
                throw ApiError(NEMESYS_E_INVALID_ARGUMENT, "sweep options must be a JSON object");
            for (const auto& [key, value] : j.items()) {
                if (key == "t_values")
                    o.t_values = value.get<std::vector<unsigned>>();
                else if (key == "ber_values")
                    o.ber_values = value.get<std::vector<double>>();
                else if (key == "trials")
                    o.trials = value.get<std::size_t>();
                else if (key == "seed")
                    o.seed = value.get<std::uint64_t>();
                else if (key == "codeword_only")
                    o.codeword_only = value.get<bool>();
                else if (key == "threads")
                    o.threads = value.get<unsigned>();
                else
                    throw ApiError(NEMESYS_E_INVALID_ARGUMENT, "unknown sweep option '" + key + "'");
            }
        }
        const auto result = channel::run_sweep(o);
        put(table_out, channel::sweep_table(result));
        put(summary_json, channel::sweep_summary_json(result));
    });
}

nemesys_status nemesys_vehicle_report(int configuration, const char* config_dir, char** json_out)
{
    return guarded(
        [&] {
            need(json_out, "json_out");
            const auto params = vehicle::VehicleParams::shipped(configuration, dir_of(config_dir));
            *json_out = dup(vehicle::characterize(params).dump(2));
        },
        NEMESYS_E_CONFIG);
}

nemesys_status nemesys_sim_create(int vehicle_configuration, const char* config_dir, nemesys_sim** out)
{
    return guarded(
        [&] {
            need(out, "out");
            auto cfg = executor::ExecutorConfig::shipped(vehicle_configuration, dir_of(config_dir));
            *out = new nemesys_sim{executor::MissionExecutor(std::move(cfg))};
        },
        NEMESYS_E_CONFIG);
}

void nemesys_sim_destroy(nemesys_sim* sim) { delete sim; }

nemesys_status nemesys_sim_set_channel(nemesys_sim* sim, double ber, uint64_t seed)
{
    return guarded([&] {
        auto& s = need(sim, "sim");
        if (!(ber >= 0.0 && ber <= 1.0))
            throw ApiError(NEMESYS_E_INVALID_ARGUMENT, "BER must be in [0, 1]");
        s.ber = ber;
        s.seed = seed;
        s.sent = 0;
    });
}

nemesys_status nemesys_sim_submit_hex(nemesys_sim* sim, const char* hex, char** disposition_out)
{
    return guarded([&] {
        auto& s = need(sim, "sim");
        const auto d = s.executor.submit_packet(from_hex(need_str(hex, "hex")));
        put(disposition_out, link::disposition_code(d));
    });
}

nemesys_status nemesys_sim_submit_spec(nemesys_sim* sim, const char* spec, char** disposition_out)
{
    return guarded([&] {
        auto& s = need(sim, "sim");
        const auto& l = s.executor.link();
        const auto cmd = mission::parse_spec(std::string_view(need_str(spec, "spec")), l.table());
        const auto d = s.executor.submit_packet(noisy(s, l.encode_packet(cmd)));
        put(disposition_out, link::disposition_code(d));
    });
}

nemesys_status nemesys_sim_tick(nemesys_sim* sim, uint64_t ticks)
{
    return guarded([&] {
        auto& s = need(sim, "sim");
        for (uint64_t i = 0; i < ticks; ++i)
            s.executor.tick();
    });
}

nemesys_status nemesys_sim_run_schedule(nemesys_sim* sim, const char* schedule, double duration)
{
    return guarded([&] {
        auto& s = need(sim, "sim");
        auto packets = executor::parse_schedule(need_str(schedule, "schedule"), s.executor.link());
        for (auto& p : packets)
            p.packet = noisy(s, p.packet);
        executor::run_schedule(s.executor, packets, duration);
    });
}

nemesys_status nemesys_sim_snapshot(const nemesys_sim* sim, nemesys_snapshot* out)
{
    return guarded([&] {
        const auto snap = need(sim, "sim").executor.snapshot();
        auto& o = need(out, "out");
        o = {};
        o.t = snap.t;
        o.x = snap.vehicle.x;
        o.y = snap.vehicle.y;
        o.z = snap.vehicle.z;
        o.phi = snap.vehicle.phi;
        o.psi = snap.vehicle.psi;
        o.u = snap.vehicle.u;
        o.w = snap.vehicle.w;
        o.r = snap.vehicle.r;
        o.plan_id = snap.plan_id;
        o.waypoint_index = snap.waypoint_index;
        o.waypoint_count = snap.waypoint_count;
        copy_field(o.phase, executor::to_string(snap.phase));
        if (snap.last_disposition)
            copy_field(o.last_disposition, link::disposition_code(*snap.last_disposition));
    });
}

nemesys_status nemesys_sim_trajectory_csv(const nemesys_sim* sim, char** csv_out)
{
    return guarded([&] {
        const auto& s = need(sim, "sim");
        need(csv_out, "csv_out");
        *csv_out = dup(s.executor.trajectory_log());
    });
}

nemesys_status nemesys_sim_command_log_csv(const nemesys_sim* sim, char** csv_out)
{
    return guarded([&] {
        const auto& s = need(sim, "sim");
        need(csv_out, "csv_out");
        *csv_out = dup(s.executor.command_log_csv());
    });
}

nemesys_status nemesys_sim_plan_csv(const nemesys_sim* sim, char** csv_out)
{
    return guarded([&] {
        const auto& s = need(sim, "sim");
        need(csv_out, "csv_out");
        const auto& plan = s.executor.plan();
        *csv_out = dup(plan ? planning::export_plan(*plan) : std::string("index,x,y,depth,speed\n"));
    });
}

void nemesys_service_options_init(nemesys_service_options* options)
{
    if (!options)
        return;
    *options = {};
    options->port = 8765;
    options->vehicle_configuration = 3;
    options->seed = 1;
    options->realtime_factor = 1.0;
}

nemesys_status nemesys_service_start(const nemesys_service_options* options, nemesys_service** out)
{
    return guarded(
        [&] {
            const auto& o = need(options, "options");
            need(out, "out");
            service::SessionConfig sc;
            sc.vehicle_config = o.vehicle_configuration;
            sc.ber = o.ber;
            sc.seed = o.seed;
            sc.realtime_factor = o.realtime_factor;
            sc.config_dir = dir_of(o.config_dir);
            service::ServerOptions so;
            if (o.address)
                so.address = o.address;
            so.port = o.port;
            std::unique_ptr<nemesys_service> svc;
            try {
                svc = std::make_unique<nemesys_service>(std::move(sc), so);
            } catch (const std::runtime_error& e) {
                throw ApiError(NEMESYS_E_CONFIG, e.what());
            }
            svc->server.start();
            *out = svc.release();
        },
        NEMESYS_E_IO);
}

uint16_t nemesys_service_port(const nemesys_service* service)
{
    return service ? service->server.port() : 0;
}

nemesys_status nemesys_service_wait(nemesys_service* service)
{
    return guarded([&] { need(service, "service").server.wait(); });
}

void nemesys_service_stop(nemesys_service* service)
{
    if (service)
        service->server.stop();
}

void nemesys_service_destroy(nemesys_service* service) { delete service; }

}  // extern "C"

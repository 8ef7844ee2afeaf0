// Command-line front end. Talks to the library only through nemesys.h.

#include <nemesys/nemesys.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <pthread.h>

namespace {

/// Exit code for a packet that did not yield a command.
constexpr int kExitRejected = 3;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(nemesys_status s)
{
    if (s != NEMESYS_OK)
        throw Failure(std::string(nemesys_status_name(s)) + ": " + nemesys_last_error());
}

struct Str {
    char* p = nullptr;
    ~Str() { nemesys_free_string(p); }
    char** out() { return &p; }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

using Link = std::unique_ptr<nemesys_link, decltype(&nemesys_link_destroy)>;
using Sim = std::unique_ptr<nemesys_sim, decltype(&nemesys_sim_destroy)>;

Link make_link(const std::string& dir)
{
    nemesys_link* l = nullptr;
    check(nemesys_link_create(dir.empty() ? nullptr : dir.c_str(), &l));
    return Link(l, &nemesys_link_destroy);
}

std::string read_text(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw Failure("cannot write " + path);
}

/// "square --speed 0.5 dir=ccw" style arguments -> "square speed=0.5 dir=ccw".
std::string spec_from_args(const std::vector<std::string>& args)
{
    std::string pattern;
    std::vector<std::string> params;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string a = args[i];
        if (a.rfind("--", 0) == 0) {
            a = a.substr(2);
            if (a.find('=') == std::string::npos) {
                if (i + 1 >= args.size())
                    throw CLI::ValidationError("--" + a, "missing value");
                a += "=" + args[++i];
            }
            params.push_back(a);
        } else if (a.find('=') != std::string::npos) {
            params.push_back(a);
        } else if (pattern.empty()) {
            pattern = a;
        } else {
            throw CLI::ValidationError(a, "unexpected argument");
        }
    }
    if (pattern.empty())
        throw CLI::ValidationError("pattern", "a pattern name is required");
    std::string spec = pattern;
    for (const auto& p : params)
        spec += " " + p;
    return spec;
}

int run_encode(const std::vector<std::string>& args, const std::string& dir, bool json)
{
    auto link = make_link(dir);
    const auto spec = spec_from_args(args);
    Str hex, report;
    check(nemesys_link_encode(link.get(), spec.c_str(), hex.out(), report.out()));
    if (json) {
        std::cout << report.str() << "\n";
        return 0;
    }
    const auto j = nlohmann::json::parse(report.str());
    std::cout << hex.str() << "\n";
    std::cerr << j["command"]["spec"].get<std::string>() << "  (" << j["packet_bits"] << " bits, "
              << j["airtime_ms"].get<double>() << " ms)\n";
    return 0;
}

int run_decode(const std::string& hex_arg, const std::string& dir, bool json)
{
    auto link = make_link(dir);
    std::string hex = hex_arg == "-" ? read_text("-") : hex_arg;
    std::erase_if(hex, [](unsigned char c) { return std::isspace(c); });
    Str report;
    check(nemesys_link_decode(link.get(), hex.c_str(), report.out()));
    const auto j = nlohmann::json::parse(report.str());
    const auto d = j["disposition"].get<std::string>();
    if (json) {
        std::cout << report.str() << "\n";
    } else {
        std::cout << d;
        if (!j["command"].is_null())
            std::cout << " " << j["command"]["spec"].get<std::string>();
        if (!j["corrected_positions"].empty())
            std::cout << " corrected=" << j["corrected_positions"].dump();
        if (!j["reason"].get<std::string>().empty())
            std::cout << " (" << j["reason"].get<std::string>() << ")";
        std::cout << "\n";
    }
    return d == "CLEAN" || d == "CORRECTED" ? 0 : kExitRejected;
}

struct SweepArgs {
    std::vector<unsigned> t{1, 2, 3, 4};
    std::vector<double> ber{0.001, 0.005, 0.01, 0.02, 0.03, 0.05, 0.07, 0.10};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool codeword_only = false;
    std::string table_out = "-";
    std::string json_out;
};

int run_sweep(const SweepArgs& a)
{
    const nlohmann::json options{{"t_values", a.t},   {"ber_values", a.ber},   {"trials", a.trials},
                                 {"seed", a.seed},    {"threads", a.threads},  {"codeword_only", a.codeword_only}};
    Str table, summary;
    check(nemesys_sweep(options.dump().c_str(), table.out(), summary.out()));
    write_text(a.table_out, table.str());
    if (!a.json_out.empty())
        write_text(a.json_out, summary.str() + "\n");
    return 0;
}

struct SimulateArgs {
    std::string schedule;
    double duration = 60.0;
    int vehicle = 3;
    double ber = 0.0;
    std::uint64_t seed = 1;
    std::string trajectory;
    std::string commands;
    std::string plan;
};

int run_simulate(const SimulateArgs& a, const std::string& dir)
{
    nemesys_sim* raw = nullptr;
    check(nemesys_sim_create(a.vehicle, dir.empty() ? nullptr : dir.c_str(), &raw));
    Sim sim(raw, &nemesys_sim_destroy);
    check(nemesys_sim_set_channel(sim.get(), a.ber, a.seed));
    const auto text = read_text(a.schedule);
    check(nemesys_sim_run_schedule(sim.get(), text.c_str(), a.duration));

    const auto dump = [&](const std::string& path, auto fn) {
        if (path.empty())
            return;
        Str s;
        check(fn(sim.get(), s.out()));
        write_text(path, s.str());
    };
    dump(a.trajectory, nemesys_sim_trajectory_csv);
    dump(a.commands, nemesys_sim_command_log_csv);
    dump(a.plan, nemesys_sim_plan_csv);

    nemesys_snapshot s{};
    check(nemesys_sim_snapshot(sim.get(), &s));
    const nlohmann::ordered_json j{{"t", s.t},
                                   {"phase", s.phase},
                                   {"x", s.x},
                                   {"y", s.y},
                                   {"depth", s.z},
                                   {"yaw", s.psi},
                                   {"plan_id", s.plan_id},
                                   {"waypoint_index", s.waypoint_index},
                                   {"waypoint_count", s.waypoint_count},
                                   {"last_disposition", s.last_disposition}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_vehicle(int config, const std::string& dir)
{
    Str report;
    check(nemesys_vehicle_report(config, dir.empty() ? nullptr : dir.c_str(), report.out()));
    std::cout << report.str() << "\n";
    return 0;
}

struct ServeArgs {
    std::string address = "127.0.0.1";
    std::uint16_t port = 8765;
    int vehicle = 3;
    double ber = 0.0;
    std::uint64_t seed = 1;
    double realtime_factor = 1.0;
};

int run_serve(const ServeArgs& a, const std::string& dir)
{
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    nemesys_service_options o;
    nemesys_service_options_init(&o);
    o.address = a.address.c_str();
    o.port = a.port;
    o.vehicle_configuration = a.vehicle;
    o.ber = a.ber;
    o.seed = a.seed;
    o.realtime_factor = a.realtime_factor;
    o.config_dir = dir.empty() ? nullptr : dir.c_str();
    nemesys_service* svc = nullptr;
    check(nemesys_service_start(&o, &svc));
    std::cout << "listening on ws://" << a.address << ":" << nemesys_service_port(svc) << "/" << std::endl;

    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "stopping\n";
    nemesys_service_stop(svc);
    nemesys_service_destroy(svc);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"NemeSys mission link tools"};
    app.require_subcommand(1);
    std::string config_dir;
    app.add_option("--config-dir", config_dir, "Directory of config overrides")->check(CLI::ExistingDirectory);
    app.set_version_flag("--version", std::string(nemesys_version()));

    auto* encode = app.add_subcommand("encode", "Encode a command into a 100-bit packet (hex)");
    encode->allow_extras();
    bool encode_json = false;
    encode->add_flag("--json", encode_json, "Print the field-by-field breakdown");
    encode->footer("Example: encode circle --speed 0.5 --depth 1 --radius 5 --dir ccw");

    auto* decode = app.add_subcommand("decode", "Decode a hex bit stream");
    std::string hex;
    bool decode_json = false;
    decode->add_option("hex", hex, "Hex digits, or - for stdin")->required();
    decode->add_flag("--json", decode_json, "Print the full decode report");
    decode->footer("Exit status 3 when no command was accepted.");

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo decode success over T and BER");
    SweepArgs sa;
    sweep->add_option("--t", sa.t, "Correction capabilities")->delimiter(',')->capture_default_str();
    sweep->add_option("--ber", sa.ber, "Bit error rates")->delimiter(',')->capture_default_str();
    sweep->add_option("--trials", sa.trials, "Trials per cell")->capture_default_str()->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
    sweep->add_option("--threads", sa.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    sweep->add_flag("--codeword-only", sa.codeword_only, "Skip framing; noise the codeword only");
    sweep->add_option("--table", sa.table_out, "Table output file, - for stdout")->capture_default_str();
    sweep->add_option("--summary", sa.json_out, "JSON summary output file");

    auto* simulate = app.add_subcommand("simulate", "Run a packet schedule through the mission executor");
    SimulateArgs ma;
    simulate->add_option("schedule", ma.schedule, "Schedule file, - for stdin")->required();
    simulate->add_option("--duration", ma.duration, "Simulated seconds")->capture_default_str()->check(CLI::NonNegativeNumber);
    simulate->add_option("--vehicle", ma.vehicle, "Vehicle configuration")->capture_default_str()->check(CLI::Range(1, 3));
    simulate->add_option("--ber", ma.ber, "Channel bit error rate")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    simulate->add_option("--seed", ma.seed, "Channel seed")->capture_default_str();
    simulate->add_option("--trajectory", ma.trajectory, "Trajectory CSV output");
    simulate->add_option("--commands", ma.commands, "Command log CSV output");
    simulate->add_option("--plan", ma.plan, "Final waypoint plan CSV output");
    simulate->footer("Schedule lines: \"<t> spec <command>\" or \"<t> hex <digits>\"; # starts a comment.");

    auto* veh = app.add_subcommand("vehicle", "Standard maneuver trials for a vehicle configuration");
    int vehicle_cfg = 3;
    veh->add_option("config", vehicle_cfg, "Configuration 1, 2 or 3")->check(CLI::Range(1, 3))->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Operator console WebSocket service");
    ServeArgs va;
    serve->add_option("--address", va.address, "Listen address")->capture_default_str();
    serve->add_option("--port", va.port, "Listen port, 0 for any")->capture_default_str();
    serve->add_option("--vehicle", va.vehicle, "Vehicle configuration")->capture_default_str()->check(CLI::Range(1, 3));
    serve->add_option("--ber", va.ber, "Initial channel bit error rate")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    serve->add_option("--seed", va.seed, "Channel seed")->capture_default_str();
    serve->add_option("--realtime-factor", va.realtime_factor, "Simulated seconds per wall second, 0 for unthrottled")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
        if (*encode)
            return run_encode(encode->remaining(), config_dir, encode_json);
        if (!app.remaining().empty())
            throw CLI::ExtrasError(app.remaining());
        if (*decode)
            return run_decode(hex, config_dir, decode_json);
        if (*sweep)
            return run_sweep(sa);
        if (*simulate)
            return run_simulate(ma, config_dir);
        if (*veh)
            return run_vehicle(vehicle_cfg, config_dir);
        if (*serve)
            return run_serve(va, config_dir);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

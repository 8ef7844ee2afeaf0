#include "generators.hpp"
#include "mission/command_spec.hpp"

#include <nemesys/nemesys.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>

using nlohmann::json;

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { nemesys_free_string(p); }
    char** out() { return &p; }
    std::string str() const { return p ? p : ""; }
};

struct LinkFixture : ::testing::Test {
    void SetUp() override { ASSERT_EQ(nemesys_link_create(nullptr, &link), NEMESYS_OK) << nemesys_last_error(); }
    void TearDown() override { nemesys_link_destroy(link); }

    std::string encode(const std::string& spec)
    {
        Str hex;
        EXPECT_EQ(nemesys_link_encode(link, spec.c_str(), hex.out(), nullptr), NEMESYS_OK) << nemesys_last_error();
        return hex.str();
    }
    json decode(const std::string& hex)
    {
        Str report;
        EXPECT_EQ(nemesys_link_decode(link, hex.c_str(), report.out()), NEMESYS_OK) << nemesys_last_error();
        return json::parse(report.str());
    }

    nemesys_link* link = nullptr;
};

char flip_nibble(char c, unsigned mask)
{
    const unsigned v = std::stoul(std::string(1, c), nullptr, 16) ^ mask;
    return "0123456789ABCDEF"[v];
}

}  // namespace

TEST_F(LinkFixture, EncodeKnownPacket)
{
    Str hex, report;
    ASSERT_EQ(nemesys_link_encode(link, "circle speed=0.5 depth=1 radius=5 dir=ccw", hex.out(), report.out()),
              NEMESYS_OK);
    EXPECT_EQ(hex.str().size(), 25u);
    EXPECT_EQ(hex.str().substr(0, 6), "AAAAB7");
    const auto j = json::parse(report.str());
    EXPECT_EQ(j["packet_bits"], 100);
    EXPECT_EQ(j["fields"].size(), 12u);
    EXPECT_EQ(j["fields"][2]["field"], "pattern_id");
    EXPECT_EQ(j["fields"][2]["value"], 3);
}

TEST_F(LinkFixture, RandomRoundTrip)
{
    std::mt19937_64 rng(2024);
    const auto& table = nemesys::mission::QuantTable::shipped();
    for (int i = 0; i < 2000; ++i) {
        const auto spec = nemesys::mission::format_spec(nemesys::testgen::random_command(rng, table), table);
        const auto j = decode(encode(spec));
        ASSERT_EQ(j["disposition"], "CLEAN") << spec;
        ASSERT_EQ(j["command"]["spec"], spec);
    }
}

// Every single-digit corruption of a packet: a CLEAN or CORRECTED verdict
// must carry the original command.
TEST_F(LinkFixture, CorruptedDigitNeverYieldsWrongCommand)
{
    std::mt19937_64 rng(77);
    const auto& table = nemesys::mission::QuantTable::shipped();
    int corrected = 0, rejected = 0;
    for (int i = 0; i < 20; ++i) {
        const auto spec = nemesys::mission::format_spec(nemesys::testgen::random_command(rng, table), table);
        const auto hex = encode(spec);
        for (std::size_t pos = 0; pos < hex.size(); ++pos)
            for (unsigned mask = 1; mask < 16; ++mask) {
                auto bad = hex;
                bad[pos] = flip_nibble(bad[pos], mask);
                const auto j = decode(bad);
                const auto d = j["disposition"].get<std::string>();
                if (d == "CLEAN" || d == "CORRECTED") {
                    ASSERT_EQ(j["command"]["spec"], spec) << bad;
                    corrected += d == "CORRECTED";
                } else {
                    ++rejected;
                }
            }
    }
    EXPECT_GT(corrected, 0);
    EXPECT_GT(rejected, 0);
}

TEST_F(LinkFixture, ErrorsCarryStatusAndMessage)
{
    Str hex;
    EXPECT_EQ(nemesys_link_encode(link, "zigzag speed=1", hex.out(), nullptr), NEMESYS_E_COMMAND);
    EXPECT_NE(std::string(nemesys_last_error()).find("zigzag"), std::string::npos);
    EXPECT_EQ(hex.p, nullptr);
    EXPECT_EQ(nemesys_link_encode(link, "hover duration=120 depth=30 heading=90", hex.out(), nullptr),
              NEMESYS_E_COMMAND);
    EXPECT_EQ(nemesys_link_encode(link, nullptr, hex.out(), nullptr), NEMESYS_E_INVALID_ARGUMENT);
    EXPECT_EQ(nemesys_link_encode(nullptr, "hover", hex.out(), nullptr), NEMESYS_E_INVALID_ARGUMENT);
    Str report;
    EXPECT_EQ(nemesys_link_decode(link, "xyz", report.out()), NEMESYS_E_INVALID_ARGUMENT);
    EXPECT_EQ(nemesys_link_decode(link, "AAAA", report.out()), NEMESYS_OK);
    EXPECT_STREQ(nemesys_last_error(), "");
    EXPECT_EQ(json::parse(report.str())["disposition"], "FRAME_FAIL");
    EXPECT_STREQ(nemesys_status_name(NEMESYS_E_CONFIG), "config");
}

TEST(CApi, MissingConfigDirFallsBackButBrokenFileFails)
{
    nemesys_link* l = nullptr;
    EXPECT_EQ(nemesys_link_create("/nonexistent-dir", &l), NEMESYS_OK);
    nemesys_link_destroy(l);
    const auto dir = std::filesystem::temp_directory_path() / "nemesys_capi_cfg";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "quantization.ini") << "[speed]\nscale = banana\n";
    l = nullptr;
    EXPECT_NE(nemesys_link_create(dir.c_str(), &l), NEMESYS_OK);
    EXPECT_EQ(l, nullptr);
    std::filesystem::remove_all(dir);
}

TEST(CApi, SweepSmall)
{
    Str table, summary;
    ASSERT_EQ(nemesys_sweep(R"({"t_values":[2],"ber_values":[0.0,0.5],"trials":50,"seed":3})", table.out(),
                            summary.out()),
              NEMESYS_OK)
        << nemesys_last_error();
    EXPECT_EQ(table.str().substr(0, table.str().find('\n')), "T,ber,n,trials,successes,rate");
    const auto j = json::parse(summary.str());
    ASSERT_EQ(j["cells"].size(), 2u);
    EXPECT_EQ(j["cells"][0]["successes"], 50);
    EXPECT_EQ(nemesys_sweep(R"({"colour":1})", table.out(), nullptr), NEMESYS_E_INVALID_ARGUMENT);
    EXPECT_EQ(nemesys_sweep("[", nullptr, nullptr), NEMESYS_E_INVALID_ARGUMENT);
}

TEST(CApi, VehicleReport)
{
    Str r;
    ASSERT_EQ(nemesys_vehicle_report(3, nullptr, r.out()), NEMESYS_OK) << nemesys_last_error();
    const auto j = json::parse(r.str());
    EXPECT_EQ(j["controllability_rank"], 4);
    Str bad;
    EXPECT_EQ(nemesys_vehicle_report(7, nullptr, bad.out()), NEMESYS_E_INVALID_ARGUMENT);
}

TEST(CApi, SimulationRunsSchedule)
{
    nemesys_sim* sim = nullptr;
    ASSERT_EQ(nemesys_sim_create(3, nullptr, &sim), NEMESYS_OK);
    std::unique_ptr<nemesys_sim, decltype(&nemesys_sim_destroy)> guard(sim, &nemesys_sim_destroy);
    ASSERT_EQ(nemesys_sim_run_schedule(sim, "0 spec hover duration=10 depth=1 heading=90\n", 5.0), NEMESYS_OK)
        << nemesys_last_error();
    nemesys_snapshot s{};
    ASSERT_EQ(nemesys_sim_snapshot(sim, &s), NEMESYS_OK);
    EXPECT_NEAR(s.t, 5.0, 1e-9);
    EXPECT_STREQ(s.phase, "executing");
    EXPECT_STREQ(s.last_disposition, "CLEAN");
    EXPECT_EQ(s.plan_id, 1);
    EXPECT_GT(s.z, 0.3);

    Str plan, log, traj;
    ASSERT_EQ(nemesys_sim_plan_csv(sim, plan.out()), NEMESYS_OK);
    EXPECT_EQ(plan.str().rfind("index,x,y,depth,speed", 0), 0u);
    ASSERT_EQ(nemesys_sim_command_log_csv(sim, log.out()), NEMESYS_OK);
    EXPECT_NE(log.str().find("CLEAN"), std::string::npos);
    ASSERT_EQ(nemesys_sim_trajectory_csv(sim, traj.out()), NEMESYS_OK);
    const auto rows = traj.str();
    EXPECT_GT(std::count(rows.begin(), rows.end(), '\n'), 500);

    EXPECT_EQ(nemesys_sim_run_schedule(sim, "5 spec zigzag\n", 6.0), NEMESYS_E_INVALID_ARGUMENT);
    EXPECT_NE(std::string(nemesys_last_error()).find("line 1"), std::string::npos);
    EXPECT_EQ(nemesys_sim_set_channel(sim, 2.0, 1), NEMESYS_E_INVALID_ARGUMENT);
}

TEST(CApi, NoisyChannelIsSeeded)
{
    const auto run = [](std::uint64_t seed) {
        nemesys_sim* sim = nullptr;
        EXPECT_EQ(nemesys_sim_create(3, nullptr, &sim), NEMESYS_OK);
        EXPECT_EQ(nemesys_sim_set_channel(sim, 0.05, seed), NEMESYS_OK);
        std::string ds;
        for (int i = 0; i < 40; ++i) {
            Str d;
            EXPECT_EQ(nemesys_sim_submit_spec(sim, "hover duration=10 depth=1 heading=90", d.out()), NEMESYS_OK);
            ds += d.str() + ",";
        }
        nemesys_sim_destroy(sim);
        return ds;
    };
    EXPECT_EQ(run(5), run(5));
    EXPECT_NE(run(5), run(6));
}

TEST(CApi, ServiceStartsAndStops)
{
    nemesys_service_options o;
    nemesys_service_options_init(&o);
    o.port = 0;
    nemesys_service* svc = nullptr;
    ASSERT_EQ(nemesys_service_start(&o, &svc), NEMESYS_OK) << nemesys_last_error();
    EXPECT_NE(nemesys_service_port(svc), 0);
    nemesys_service_options taken = o;
    taken.port = nemesys_service_port(svc);
    nemesys_service* second = nullptr;
    EXPECT_EQ(nemesys_service_start(&taken, &second), NEMESYS_E_IO);
    nemesys_service_stop(svc);
    nemesys_service_destroy(svc);
    o.vehicle_configuration = 9;
    EXPECT_EQ(nemesys_service_start(&o, &svc), NEMESYS_E_INVALID_ARGUMENT);
}

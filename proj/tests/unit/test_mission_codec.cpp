#include "common/config.hpp"
#include "mission/command_spec.hpp"
#include "mission/payload_codec.hpp"

#include "../support/generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace nemesys;
using namespace nemesys::mission;

namespace {

const QuantTable& table()
{
    return QuantTable::shipped();
}

CommandErrorKind error_kind(auto&& fn)
{
    try {
        fn();
    } catch (const CommandError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected CommandError";
    return CommandErrorKind::syntax;
}

}  // namespace

TEST(PatternIds, DictionaryIsABijection)
{
    const std::vector<std::pair<std::string_view, unsigned>> expected = {
        {"straight", 0b0000}, {"square", 0b0001}, {"lawnmower", 0b0010}, {"circle", 0b0011},
        {"spiral", 0b0100},   {"helix", 0b0101},  {"hover", 0b0110},     {"box_orbit", 0b0111},
    };
    std::set<unsigned> ids;
    for (const auto& [name, id] : expected) {
        const auto p = pattern_from_name(name);
        ASSERT_TRUE(p);
        EXPECT_EQ(static_cast<unsigned>(*p), id);
        EXPECT_EQ(pattern_name(*pattern_from_id(id)), name);
        ids.insert(id);
    }
    EXPECT_EQ(ids.size(), 8U);
    for (unsigned id = 8; id < 16; ++id)
        EXPECT_FALSE(pattern_from_id(id));
    EXPECT_EQ(pattern_from_name("box-orbit"), PatternType::box_orbit);
}

TEST(QuantTable, ShippedValues)
{
    EXPECT_EQ(table().version(), 1);
    EXPECT_EQ(table().quantize(ParamRole::cruise_speed, 0.0), 0);
    EXPECT_EQ(table().quantize(ParamRole::target_depth, 25.5), 255);
    EXPECT_DOUBLE_EQ(table().dequantize(ParamRole::target_depth, 255), 25.5);
    EXPECT_DOUBLE_EQ(table().dequantize(ParamRole::duration, 0), 0.0);
    EXPECT_EQ(table().quantize(ParamRole::duration, 2550.0), 255);
    EXPECT_EQ(table().quantize(ParamRole::heading, 358.59375), 255);
    EXPECT_EQ(table().quantize(ParamRole::heading, 359.9), 0);  // rounds to 360 == 0
    EXPECT_EQ(table().at(ParamRole::direction).raw_max(), 1);
    EXPECT_EQ(table().at(ParamRole::radius).raw_max(), 255);
}

TEST(QuantTable, OutOfRangeIsAnErrorNotAClamp)
{
    EXPECT_EQ(error_kind([] { table().quantize(ParamRole::heading, 360.0); }),
              CommandErrorKind::out_of_range);
    EXPECT_EQ(error_kind([] { table().quantize(ParamRole::target_depth, 25.6); }),
              CommandErrorKind::out_of_range);
    EXPECT_EQ(error_kind([] { table().quantize(ParamRole::cruise_speed, -0.01); }),
              CommandErrorKind::out_of_range);
    EXPECT_EQ(error_kind([] { table().quantize(ParamRole::direction, 2.0); }),
              CommandErrorKind::out_of_range);
    EXPECT_EQ(error_kind([] { table().quantize(ParamRole::radius, std::nan("")); }),
              CommandErrorKind::out_of_range);
}

TEST(QuantTable, RoundTripWithinHalfStep)
{
    for (std::size_t r = 0; r < kRoleCount; ++r) {
        const auto role = static_cast<ParamRole>(r);
        const auto& q = table().at(role);
        const double top = q.max_exclusive ? q.max - 1e-9 : q.max;
        for (int i = 0; i <= 1000; ++i) {
            const double v = q.min + (top - q.min) * i / 1000.0;
            const double back = table().dequantize(role, table().quantize(role, v));
            double err = std::abs(back - v);
            if (q.wrap)
                err = std::min(err, std::abs(back + (q.max - q.min) - v));
            ASSERT_LE(err, q.scale / 2 + 1e-9) << role_key(role) << " " << v;
        }
    }
}

TEST(QuantTable, VersionAndSchemaChecks)
{
    std::string text(config::shipped_text(QuantTable::kFileName));
    const auto bumped = [&] {
        auto t = text;
        t.replace(t.find("version = 1"), 11, "version = 2");
        return t;
    }();
    const auto v2 = QuantTable::parse(bumped);
    EXPECT_EQ(v2.version(), 2);
    EXPECT_EQ(error_kind([&] { v2.require_version(QuantTable::kVersion); }),
              CommandErrorKind::table_version);
    EXPECT_NO_THROW(table().require_version(QuantTable::kVersion));

    auto missing = text;
    missing.replace(missing.find("[turns]"), 7, "[tunrs]");
    EXPECT_THROW(QuantTable::parse(missing), std::runtime_error);
    EXPECT_THROW(QuantTable::parse("[table]\nversion = 1\n"), std::runtime_error);
}

TEST(PayloadCodec, SquareStartsWithItsId)
{
    const auto cmd = parse_spec("square speed=0.5 depth=0.5 side=10 dir=ccw", table());
    const auto bits = encode_command(cmd, table());
    ASSERT_EQ(bits.size(), kPayloadBits);
    EXPECT_EQ(read_bits(bits, 0, 4), 0b0001U);
    EXPECT_EQ(read_bits(bits, 4, 8), 50U);   // 0.5 m/s @ 0.01
    EXPECT_EQ(read_bits(bits, 12, 8), 5U);   // 0.5 m @ 0.1
    EXPECT_EQ(read_bits(bits, 20, 8), 20U);  // 10 m @ 0.5
    EXPECT_EQ(read_bits(bits, 28, 8), 1U);   // ccw
    EXPECT_EQ(read_bits(bits, 36, 16), 0U);
}

TEST(PayloadCodec, HoverAllZero)
{
    MissionCommand cmd;
    cmd.pattern = PatternType::hover;
    const auto bits = encode_command(cmd, table());
    BitVector expected{0, 1, 1, 0};
    expected.resize(52, 0);
    EXPECT_EQ(bits, expected);
}

TEST(PayloadCodec, ZeroPayloadIsStraight)
{
    const auto cmd = decode_payload(BitVector(52, 0), table());
    EXPECT_EQ(cmd.pattern, PatternType::straight);
    EXPECT_EQ(cmd.raw, (std::array<std::uint8_t, 6>{}));
}

TEST(PayloadCodec, ReservedIdRejected)
{
    BitVector bits(52, 0);
    bits[0] = bits[1] = bits[2] = bits[3] = 1;
    EXPECT_EQ(error_kind([&] { decode_payload(bits, table()); }),
              CommandErrorKind::unknown_pattern);
    bits[0] = 1;
    bits[1] = bits[2] = bits[3] = 0;  // 1000
    EXPECT_EQ(error_kind([&] { decode_payload(bits, table()); }),
              CommandErrorKind::unknown_pattern);
}

TEST(PayloadCodec, NonzeroUnusedSlotIsMalformed)
{
    MissionCommand cmd;
    cmd.pattern = PatternType::circle;
    auto bits = encode_command(cmd, table());
    bits.back() = 1;  // slot 6 is N/A for circle
    try {
        decode_payload(bits, table());
        FAIL();
    } catch (const CommandError& e) {
        EXPECT_EQ(e.kind(), CommandErrorKind::malformed);
        EXPECT_EQ(e.slot(), 6);
    }
}

TEST(PayloadCodec, DirectionOutsideEnumIsMalformed)
{
    MissionCommand cmd;
    cmd.pattern = PatternType::square;
    auto bits = encode_command(cmd, table());
    bits[28 + 6] = 1;  // slot 4 raw = 2
    EXPECT_EQ(error_kind([&] { decode_payload(bits, table()); }), CommandErrorKind::malformed);
}

TEST(PayloadCodec, EncodeNamesOffendingSlot)
{
    MissionCommand cmd;
    cmd.pattern = PatternType::straight;
    cmd.raw[4] = 3;
    try {
        encode_command(cmd, table());
        FAIL();
    } catch (const CommandError& e) {
        EXPECT_EQ(e.kind(), CommandErrorKind::out_of_range);
        EXPECT_EQ(e.slot(), 5);
    }
}

TEST(PayloadCodec, WrongLength)
{
    EXPECT_EQ(error_kind([] { decode_payload(BitVector(51, 0), table()); }),
              CommandErrorKind::bad_length);
}

TEST(PayloadCodec, RandomizedRoundTrip)
{
    std::mt19937_64 rng(23);
    std::set<PatternType> seen;
    for (int i = 0; i < 20000; ++i) {
        const auto cmd = testgen::random_command(rng);
        seen.insert(cmd.pattern);
        const auto bits = encode_command(cmd, table());
        ASSERT_EQ(bits.size(), 52U);
        ASSERT_EQ(decode_payload(bits, table()), cmd);
    }
    EXPECT_EQ(seen.size(), 8U);
}

TEST(PayloadCodec, PaddingToMessageLength)
{
    BitVector payload(52, 1);
    const auto msg = to_message_bits(payload, 56);
    ASSERT_EQ(msg.size(), 56U);
    EXPECT_EQ(from_message_bits(msg), payload);
    auto bad = msg;
    bad[54] = 1;
    EXPECT_EQ(error_kind([&] { from_message_bits(bad); }), CommandErrorKind::malformed);
}

TEST(CommandSpec, FormatParseRoundTrip)
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 5000; ++i) {
        const auto cmd = testgen::random_command(rng);
        const auto text = format_spec(cmd, table());
        ASSERT_EQ(parse_spec(text, table()), cmd) << text;
    }
}

TEST(CommandSpec, Errors)
{
    EXPECT_EQ(error_kind([] { parse_spec("zigzag speed=1", table()); }),
              CommandErrorKind::unknown_pattern);
    EXPECT_EQ(error_kind([] { parse_spec("hover duration=120 depth=1", table()); }),
              CommandErrorKind::missing_parameter);
    EXPECT_EQ(error_kind([] { parse_spec("hover duration=120 depth=1 heading=90 radius=3", table()); }),
              CommandErrorKind::unknown_parameter);
    EXPECT_EQ(error_kind([] { parse_spec("hover duration=abc depth=1 heading=90", table()); }),
              CommandErrorKind::syntax);
    EXPECT_EQ(error_kind([] { parse_spec("hover duration=120 depth=30 heading=90", table()); }),
              CommandErrorKind::out_of_range);
    EXPECT_EQ(format_spec(parse_spec("hover duration=120 depth=1.0 heading=90", table()), table()),
              "hover duration=120 depth=1 heading=90");
}

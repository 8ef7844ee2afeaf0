#include "link/mission_link.hpp"

#include "mission/payload_codec.hpp"

#include <fmt/format.h>

namespace nemesys::link {

const char* disposition_code(Disposition d)
{
    switch (d) {
    case Disposition::clean: return "CLEAN";
    case Disposition::corrected: return "CORRECTED";
    case Disposition::fec_fail: return "FEC_FAIL";
    case Disposition::frame_fail: return "FRAME_FAIL";
    case Disposition::malformed: return "MALFORMED";
    }
    return "UNKNOWN";
}

std::optional<Disposition> disposition_from_code(std::string_view code)
{
    for (auto d : {Disposition::clean, Disposition::corrected, Disposition::fec_fail,
                   Disposition::frame_fail, Disposition::malformed})
        if (code == disposition_code(d))
            return d;
    return std::nullopt;
}

MissionLink::MissionLink(mission::QuantTable table, SyncOptions sync)
    : m_table(std::move(table)),
      m_code(fec::BchCode::build(kT, kMessageBits, kFieldDegree)),
      m_sync(sync)
{
    m_table.require_version(mission::QuantTable::kVersion);
    m_sync.codeword_bits = m_code.n();
}

BitVector MissionLink::encode_codeword(const mission::MissionCommand& cmd) const
{
    const auto payload = mission::encode_command(cmd, m_table);
    return m_code.encode(mission::to_message_bits(payload, m_code.k()));
}

BitVector MissionLink::encode_packet(const mission::MissionCommand& cmd) const
{
    return frame(encode_codeword(cmd));
}

Reception MissionLink::receive(BitSpan stream) const
{
    Reception rx;
    const auto candidates = deframe(stream, m_sync);
    rx.candidates = candidates.size();
    if (candidates.empty()) {
        rx.disposition = Disposition::frame_fail;
        rx.reason = "no preamble/delimiter sync";
        return rx;
    }

    std::optional<Reception> malformed;
    for (const auto& cand : candidates) {
        const auto decoded = m_code.decode(cand.codeword);
        if (decoded.status == fec::DecodeStatus::failure)
            continue;
        try {
            const auto payload = mission::from_message_bits(decoded.message);
            rx.command = mission::decode_payload(payload, m_table);
            rx.disposition = decoded.status == fec::DecodeStatus::clean ? Disposition::clean
                                                                        : Disposition::corrected;
            rx.offset = cand.offset;
            rx.corrected_positions = decoded.corrected_positions;
            return rx;
        } catch (const mission::CommandError& e) {
            if (!malformed) {
                malformed = rx;
                malformed->disposition = Disposition::malformed;
                malformed->offset = cand.offset;
                malformed->corrected_positions = decoded.corrected_positions;
                malformed->reason = fmt::format("{}: {}", mission::to_string(e.kind()), e.what());
            }
        }
    }
    if (malformed)
        return *malformed;
    rx.disposition = Disposition::fec_fail;
    rx.reason = fmt::format("BCH decoding failed for {} sync candidate(s)", candidates.size());
    return rx;
}

}  // namespace nemesys::link

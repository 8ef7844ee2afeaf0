#pragma once

#include "common/bits.hpp"
#include "fec/bch.hpp"
#include "link/framing.hpp"
#include "mission/command.hpp"
#include "mission/quant_table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nemesys::link {

/// Outcome of receiving a command over the link.
enum class Disposition { clean, corrected, fec_fail, frame_fail, malformed };

/// "CLEAN", "CORRECTED", "FEC_FAIL", "FRAME_FAIL", "MALFORMED"
const char* disposition_code(Disposition d);
std::optional<Disposition> disposition_from_code(std::string_view code);
inline bool accepted(Disposition d)
{
    return d == Disposition::clean || d == Disposition::corrected;
}

struct Reception {
    Disposition disposition = Disposition::frame_fail;
    std::optional<mission::MissionCommand> command;
    /// Offset of the candidate that produced the result (accepted or malformed).
    std::optional<std::size_t> offset;
    std::vector<std::size_t> corrected_positions;
    std::size_t candidates = 0;
    std::string reason;
};

/// The full command path: payload -> BCH(72,56,T=2) -> 100-bit packet, and
/// back. Holds the code and the quantization table.
class MissionLink {
public:
    static constexpr unsigned kT = 2;
    static constexpr unsigned kMessageBits = 56;
    static constexpr unsigned kFieldDegree = 8;

    explicit MissionLink(mission::QuantTable table = mission::QuantTable::shipped(),
                         SyncOptions sync = {});

    const fec::BchCode& code() const { return m_code; }
    const mission::QuantTable& table() const { return m_table; }
    const SyncOptions& sync() const { return m_sync; }

    BitVector encode_codeword(const mission::MissionCommand& cmd) const;
    BitVector encode_packet(const mission::MissionCommand& cmd) const;

    /// deframe -> BCH decode -> payload decode. Candidates are tried in
    /// stream order; the first one that decodes into a valid command wins.
    Reception receive(BitSpan stream) const;

private:
    mission::QuantTable m_table;
    fec::BchCode m_code;
    SyncOptions m_sync;
};

}  // namespace nemesys::link

#include "link/framing.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace nemesys::link {

namespace {

std::size_t mismatches(BitSpan window, std::span<const std::uint8_t> pattern, std::size_t limit)
{
    std::size_t d = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        d += (window[i] ^ pattern[i]) & 1U;
        if (d > limit)
            break;
    }
    return d;
}

}  // namespace

BitVector frame(BitSpan codeword)
{
    if (codeword.empty())
        throw std::invalid_argument("frame: empty codeword");
    BitVector packet;
    packet.reserve(kHeaderBits + codeword.size() + kGuardBits);
    packet.insert(packet.end(), kPreamble.begin(), kPreamble.end());
    packet.insert(packet.end(), kDelimiter.begin(), kDelimiter.end());
    packet.insert(packet.end(), codeword.begin(), codeword.end());
    packet.insert(packet.end(), kGuard.begin(), kGuard.end());
    return packet;
}

std::vector<Candidate> deframe(BitSpan stream, const SyncOptions& options)
{
    std::vector<Candidate> out;
    const std::size_t needed = kHeaderBits + options.codeword_bits;
    if (stream.size() < needed)
        return out;
    // A match resumes the scan one bit later rather than after the guard, so
    // a false sync overlapping a real packet cannot hide it.
    for (std::size_t offset = 0; offset + needed <= stream.size(); ++offset) {
        if (mismatches(stream.subspan(offset, kPreambleBits), kPreamble,
                       options.max_preamble_errors) > options.max_preamble_errors)
            continue;
        if (mismatches(stream.subspan(offset + kPreambleBits, kDelimiterBits), kDelimiter,
                       options.max_delimiter_errors) > options.max_delimiter_errors)
            continue;
        const auto cw = stream.subspan(offset + kHeaderBits, options.codeword_bits);
        out.push_back(Candidate{offset, BitVector(cw.begin(), cw.end())});
    }
    return out;
}

std::string packet_to_hex(BitSpan packet)
{
    if (packet.size() != kPacketBits)
        throw std::invalid_argument("packet_to_hex: packet must be 100 bits");
    return to_hex(packet);
}

BitVector packet_from_hex(std::string_view hex)
{
    while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.front())))
        hex.remove_prefix(1);
    while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back())))
        hex.remove_suffix(1);
    if (hex.size() != kPacketHexChars)
        throw std::invalid_argument("packet hex must be " + std::to_string(kPacketHexChars) +
                                    " characters, got " + std::to_string(hex.size()));
    return from_hex(hex);
}

}  // namespace nemesys::link

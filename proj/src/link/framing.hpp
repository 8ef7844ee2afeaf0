#pragma once

#include "common/bits.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace nemesys::link {

// Packet layout: preamble(16) | delimiter(8) | codeword(72) | guard(4) = 100 bits.
inline constexpr std::size_t kPreambleBits = 16;
inline constexpr std::size_t kDelimiterBits = 8;
inline constexpr std::size_t kCodewordBits = 72;
inline constexpr std::size_t kGuardBits = 4;
inline constexpr std::size_t kHeaderBits = kPreambleBits + kDelimiterBits;
inline constexpr std::size_t kPacketBits = kHeaderBits + kCodewordBits + kGuardBits;
inline constexpr std::size_t kPacketHexChars = kPacketBits / 4;

/// 1010...10
inline constexpr std::array<std::uint8_t, kPreambleBits> kPreamble = {1, 0, 1, 0, 1, 0, 1, 0,
                                                                      1, 0, 1, 0, 1, 0, 1, 0};
/// 10110111
inline constexpr std::array<std::uint8_t, kDelimiterBits> kDelimiter = {1, 0, 1, 1, 0, 1, 1, 1};
inline constexpr std::array<std::uint8_t, kGuardBits> kGuard = {0, 0, 0, 0};

struct SyncOptions {
    std::size_t max_preamble_errors = 2;
    std::size_t max_delimiter_errors = 1;
    /// Codeword length carried between delimiter and guard.
    std::size_t codeword_bits = kCodewordBits;
};

struct Candidate {
    /// Bit offset of the preamble start in the stream.
    std::size_t offset = 0;
    BitVector codeword;
};

/// preamble | delimiter | codeword | guard. Throws std::invalid_argument if
/// the codeword is empty.
BitVector frame(BitSpan codeword);

/// Scan a raw stream for preamble + delimiter matches within the given
/// Hamming tolerances and return the bits that follow as codeword
/// candidates, in stream order. Only full-length candidates are emitted.
/// Candidates may be false syncs; FEC decoding is what validates them.
std::vector<Candidate> deframe(BitSpan stream, const SyncOptions& options = {});

/// 25 upper-case hex characters, MSB first.
std::string packet_to_hex(BitSpan packet);
/// Throws std::invalid_argument unless the text is exactly 25 hex digits
/// (surrounding whitespace ignored).
BitVector packet_from_hex(std::string_view hex);

}  // namespace nemesys::link

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nemesys {

/// One bit per element (0 or 1). Index 0 is the first bit on the wire.
using BitVector = std::vector<std::uint8_t>;
using BitSpan = std::span<const std::uint8_t>;

/// Append the low `width` bits of `value`, most significant first.
void append_bits(BitVector& out, std::uint64_t value, unsigned width);

/// Read `width` bits starting at `offset` as an unsigned integer, MSB first.
std::uint64_t read_bits(BitSpan bits, std::size_t offset, unsigned width);

/// Bits -> upper-case hex, MSB first. Length must be a multiple of 4.
std::string to_hex(BitSpan bits);

/// Hex -> bits, MSB first. Throws std::invalid_argument on non-hex input.
BitVector from_hex(std::string_view hex);

std::size_t hamming_distance(BitSpan a, BitSpan b);

/// Element-wise XOR of equal-length vectors.
BitVector xor_bits(BitSpan a, BitSpan b);

std::size_t popcount(BitSpan bits);

}  // namespace nemesys

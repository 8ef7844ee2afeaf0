#include "common/bits.hpp"

#include <cctype>
#include <stdexcept>

namespace nemesys {

void append_bits(BitVector& out, std::uint64_t value, unsigned width)
{
    for (unsigned i = width; i-- > 0;)
        out.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
}

std::uint64_t read_bits(BitSpan bits, std::size_t offset, unsigned width)
{
    if (offset + width > bits.size())
        throw std::out_of_range("read_bits: range exceeds bit vector");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i)
        v = (v << 1) | (bits[offset + i] & 1U);
    return v;
}

std::string to_hex(BitSpan bits)
{
    if (bits.size() % 4 != 0)
        throw std::invalid_argument("to_hex: bit count must be a multiple of 4");
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(bits.size() / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4)
        out.push_back(digits[read_bits(bits, i, 4)]);
    return out;
}

BitVector from_hex(std::string_view hex)
{
    BitVector out;
    out.reserve(hex.size() * 4);
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw std::invalid_argument(std::string("from_hex: invalid hex digit '") + c + "'");
        append_bits(out, static_cast<std::uint64_t>(v), 4);
    }
    return out;
}

std::size_t hamming_distance(BitSpan a, BitSpan b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += (a[i] ^ b[i]) & 1U;
    return d;
}

BitVector xor_bits(BitSpan a, BitSpan b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("xor_bits: length mismatch");
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = (a[i] ^ b[i]) & 1U;
    return out;
}

std::size_t popcount(BitSpan bits)
{
    std::size_t n = 0;
    for (auto b : bits)
        n += b & 1U;
    return n;
}

}  // namespace nemesys

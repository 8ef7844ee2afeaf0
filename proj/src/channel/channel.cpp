#include "channel/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nemesys::channel {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t h = splitmix64(master);
    for (auto k : keys)
        h = splitmix64(h ^ splitmix64(k));
    return h;
}

namespace {

double checked_ber(double ber)
{
    if (!(ber >= 0.0 && ber <= 1.0))
        throw std::invalid_argument("BER must be in [0, 1], got " + std::to_string(ber));
    return ber;
}

}  // namespace

BitFlipChannel::BitFlipChannel(ChannelModel model)
    : m_ber(checked_ber(model.ber)), m_engine(model.seed)
{
}

void BitFlipChannel::set_ber(double ber)
{
    m_ber = checked_ber(ber);
}

std::size_t BitFlipChannel::apply_in_place(BitVector& stream)
{
    std::size_t flips = 0;
    for (auto& bit : stream) {
        if (uniform01(m_engine) < m_ber) {
            bit ^= 1U;
            ++flips;
        }
    }
    return flips;
}

BitVector BitFlipChannel::apply(BitSpan stream)
{
    BitVector out(stream.begin(), stream.end());
    apply_in_place(out);
    return out;
}

BitVector apply_noise(const ChannelModel& model, BitSpan stream)
{
    BitFlipChannel ch(model);
    return ch.apply(stream);
}

}  // namespace nemesys::channel

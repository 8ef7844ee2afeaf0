#pragma once

#include "common/bits.hpp"

#include <cstdint>
#include <random>

namespace nemesys::channel {

/// Name of the pinned random source, recorded in sweep metadata.
inline constexpr const char* kPrngName = "mt19937_64/splitmix64-derived-seeds";

/// Independent bit-flip channel.
struct ChannelModel {
    double ber = 0.0;
    std::uint64_t seed = 0;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic sub-seed for a (master seed, key...) tuple.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(std::mt19937_64& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Stateful channel: consecutive calls continue the same random sequence.
class BitFlipChannel {
public:
    /// Throws std::invalid_argument unless 0 <= ber <= 1.
    explicit BitFlipChannel(ChannelModel model);

    BitVector apply(BitSpan stream);
    /// Flip in place; returns the number of flipped bits.
    std::size_t apply_in_place(BitVector& stream);

    double ber() const { return m_ber; }
    void set_ber(double ber);

private:
    double m_ber;
    std::mt19937_64 m_engine;
};

/// One-shot noise with a fresh engine seeded from the model: identical
/// (stream, model) give identical output.
BitVector apply_noise(const ChannelModel& model, BitSpan stream);

}  // namespace nemesys::channel

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nemesys::channel {

struct SweepOptions {
    std::vector<unsigned> t_values{1, 2, 3, 4};
    std::vector<double> ber_values{0.001, 0.005, 0.01, 0.02, 0.03, 0.05, 0.07, 0.10};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned k = 56;
    unsigned m = 8;
    /// Apply noise to the codeword bits only and skip framing.
    bool codeword_only = false;
    /// Worker threads; cells are independent so the result does not depend on it.
    unsigned threads = 1;
};

struct SweepCell {
    unsigned t = 0;
    double ber = 0.0;
    unsigned n = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::uint64_t seed = 0;

    double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
    /// Binomial standard error of rate().
    double stderr_rate() const;
};

struct EfficiencyPoint {
    unsigned t = 0;
    /// k / (k + 2mT): parity counted as 2T symbols of m bits.
    double formula_efficiency = 1.0;
    /// k / n of the constructed code; nullopt if the code cannot be built.
    std::optional<double> realized_rate;
    std::optional<unsigned> n;
};

struct SweepResult {
    SweepOptions options;
    std::vector<SweepCell> cells;  // t-major, in option order
    std::vector<EfficiencyPoint> efficiency;
    std::string prng;

    /// Throws std::out_of_range if the cell was not part of the sweep.
    const SweepCell& cell(unsigned t, double ber) const;
};

/// Both efficiency figures side by side for each T. T = 0 means no code.
std::vector<EfficiencyPoint> efficiency_curve(unsigned k, unsigned m,
                                              std::span<const unsigned> t_values);

/// Monte Carlo decode-success sweep. For each (T, BER) cell: random k-bit
/// message -> BCH encode -> frame -> bit-flip channel -> deframe -> decode;
/// a trial succeeds iff the first candidate that decodes yields the original
/// message. Each cell's RNG is seeded from (seed, T, BER) alone.
SweepResult run_sweep(const SweepOptions& options);

/// Delimited table with header "T,ber,n,trials,successes,rate".
std::string sweep_table(const SweepResult& result);
/// JSON summary with options, PRNG metadata, cells and efficiency.
std::string sweep_summary_json(const SweepResult& result);

}  // namespace nemesys::channel

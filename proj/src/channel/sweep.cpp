#include "channel/sweep.hpp"

#include "channel/channel.hpp"
#include "fec/bch.hpp"
#include "link/framing.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <stdexcept>
#include <thread>

namespace nemesys::channel {

double SweepCell::stderr_rate() const
{
    if (trials == 0)
        return 0.0;
    const double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

const SweepCell& SweepResult::cell(unsigned t, double ber) const
{
    for (const auto& c : cells)
        if (c.t == t && c.ber == ber)
            return c;
    throw std::out_of_range(fmt::format("no sweep cell for T={} ber={}", t, ber));
}

std::vector<EfficiencyPoint> efficiency_curve(unsigned k, unsigned m,
                                              std::span<const unsigned> t_values)
{
    if (k == 0 || m == 0)
        throw std::invalid_argument("efficiency_curve: k and m must be positive");
    std::vector<EfficiencyPoint> out;
    for (auto t : t_values) {
        EfficiencyPoint p;
        p.t = t;
        p.formula_efficiency = static_cast<double>(k) / (k + 2.0 * m * t);
        if (t == 0) {
            p.realized_rate = 1.0;
            p.n = k;
        } else {
            try {
                const auto code = fec::BchCode::build(t, k, m);
                p.realized_rate = static_cast<double>(k) / code.n();
                p.n = code.n();
            } catch (const std::invalid_argument&) {
            }
        }
        out.push_back(p);
    }
    return out;
}

namespace {

void run_cell(SweepCell& cell, const SweepOptions& opt)
{
    const auto code = fec::BchCode::build(cell.t, opt.k, opt.m);
    cell.n = code.n();
    std::mt19937_64 engine(cell.seed);
    link::SyncOptions sync;
    sync.codeword_bits = code.n();

    BitVector message(opt.k);
    for (std::size_t trial = 0; trial < cell.trials; ++trial) {
        for (auto& b : message)
            b = static_cast<std::uint8_t>(engine() >> 63);
        auto codeword = code.encode(message);
        BitVector stream = opt.codeword_only ? std::move(codeword) : link::frame(codeword);
        for (auto& bit : stream)
            if (uniform01(engine) < cell.ber)
                bit ^= 1U;

        bool success = false;
        if (opt.codeword_only) {
            const auto r = code.decode(stream);
            success = r.status != fec::DecodeStatus::failure && r.message == message;
        } else {
            for (const auto& cand : link::deframe(stream, sync)) {
                const auto r = code.decode(cand.codeword);
                if (r.status == fec::DecodeStatus::failure)
                    continue;
                success = r.message == message;
                break;
            }
        }
        cell.successes += success ? 1 : 0;
    }
}

}  // namespace

SweepResult run_sweep(const SweepOptions& options)
{
    if (options.trials < 1)
        throw std::invalid_argument("run_sweep: trials must be at least 1");
    SweepResult result;
    result.options = options;
    result.prng = kPrngName;
    for (auto t : options.t_values) {
        fec::BchCode::build(t, options.k, options.m);  // surface construction errors up front
        for (auto ber : options.ber_values) {
            if (!(ber >= 0.0 && ber <= 1.0))
                throw std::invalid_argument(fmt::format("run_sweep: BER {} outside [0, 1]", ber));
            SweepCell c;
            c.t = t;
            c.ber = ber;
            c.trials = options.trials;
            c.seed = derive_seed(options.seed, {t, std::bit_cast<std::uint64_t>(ber)});
            result.cells.push_back(c);
        }
    }

    const unsigned workers =
        std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(result.cells.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < result.cells.size(); i = next++)
            run_cell(result.cells[i], options);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    result.efficiency = efficiency_curve(options.k, options.m, options.t_values);
    return result;
}

std::string sweep_table(const SweepResult& result)
{
    std::string out = "T,ber,n,trials,successes,rate\n";
    for (const auto& c : result.cells)
        out += fmt::format("{},{},{},{},{},{:.6f}\n", c.t, c.ber, c.n, c.trials, c.successes,
                           c.rate());
    return out;
}

std::string sweep_summary_json(const SweepResult& result)
{
    nlohmann::ordered_json j;
    const auto& o = result.options;
    j["prng"] = result.prng;
    j["seed"] = o.seed;
    j["trials"] = o.trials;
    j["k"] = o.k;
    j["m"] = o.m;
    j["mode"] = o.codeword_only ? "codeword" : "packet";
    j["t_values"] = o.t_values;
    j["ber_values"] = o.ber_values;
    auto& cells = j["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : result.cells)
        cells.push_back({{"T", c.t},
                         {"ber", c.ber},
                         {"n", c.n},
                         {"trials", c.trials},
                         {"successes", c.successes},
                         {"rate", c.rate()},
                         {"seed", c.seed}});
    auto& eff = j["efficiency"] = nlohmann::ordered_json::array();
    for (const auto& e : result.efficiency) {
        nlohmann::ordered_json p{{"T", e.t}, {"formula_efficiency", e.formula_efficiency}};
        p["realized_rate"] = e.realized_rate ? nlohmann::ordered_json(*e.realized_rate) : nullptr;
        p["n"] = e.n ? nlohmann::ordered_json(*e.n) : nullptr;
        eff.push_back(p);
    }
    return j.dump(2) + "\n";
}

}  // namespace nemesys::channel

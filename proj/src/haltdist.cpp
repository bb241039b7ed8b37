#include "hra/haltdist.hpp"

#include "hra/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hra {

std::optional<std::uint64_t> quantile_time(const HaltTimeDistribution& dist, const Rational& p) {
    if (p <= 0 || p > 1) throw DomainError("quantile_time: p outside (0,1]");
    Rational cum = 0;
    for (const auto& [step, m] : dist.mass) {
        cum += m;
        if (cum >= p) return step;
    }
    return std::nullopt;  // Infinite
}

namespace {

void enumerate(const ProcessFactory& factory, std::uint64_t budget, unsigned max_coin_bits,
               std::vector<bool>& prefix, HaltTimeDistribution& out) {
    auto tape = std::make_shared<CoinTape>();
    tape->bits = prefix;
    RunOutcome outcome;
    try {
        ProcessPtr proc = factory(CoinContext::from_tape(tape));
        outcome = run_until(*proc, budget);
    } catch (const CoinTapeExhausted&) {
        if (prefix.size() >= max_coin_bits)
            throw EnumerationTooLarge("exact_halt_distribution: coin-bit bound exceeded");
        for (bool bit : {false, true}) {
            prefix.push_back(bit);
            enumerate(factory, budget, max_coin_bits, prefix, out);
            prefix.pop_back();
        }
        return;
    }
    const Rational weight(BigInt(1), BigInt(1) << prefix.size());
    if (outcome.output1)
        out.mass[outcome.halt_step] += weight;
    else
        out.mass_at_infinity += weight;
}

}  // namespace

HaltTimeDistribution exact_halt_distribution(const ProcessFactory& factory, std::uint64_t budget,
                                             unsigned max_coin_bits) {
    if (max_coin_bits > 24)
        throw EnumerationTooLarge("exact_halt_distribution: max_coin_bits > 24");
    HaltTimeDistribution dist;
    std::vector<bool> prefix;
    enumerate(factory, budget, max_coin_bits, prefix, dist);
    return dist;
}

QuantileEstimate estimate_quantile_time(const ProcessFactory& factory, double p,
                                        std::uint64_t trials, std::uint64_t budget, Seed seed,
                                        double confidence) {
    if (trials == 0) throw DomainError("estimate_quantile_time: trials must be >= 1");
    if (!(p > 0 && p <= 1)) throw DomainError("estimate_quantile_time: p outside (0,1]");

    constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> times;
    times.reserve(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
        ProcessPtr proc = factory(CoinContext::from_seed(derive_seed(seed, i)));
        RunOutcome out = run_until(*proc, budget);
        times.push_back(out.output1 ? out.halt_step : kInf);
    }
    std::sort(times.begin(), times.end());

    const auto order_stat = [&](std::uint64_t idx1based) {
        idx1based = std::clamp<std::uint64_t>(idx1based, 1, trials);
        return times[idx1based - 1];
    };

    // Point estimate: ceil(p*N)-th order statistic.
    const auto est_idx =
        static_cast<std::uint64_t>(std::ceil(p * static_cast<double>(trials) - 1e-12));

    // Distribution-free coverage interval from binomial order statistics.
    const double alpha = 1 - confidence;
    std::uint64_t lo_idx = 1;
    for (std::uint64_t j = trials; j >= 1; --j) {
        if (stats::binom_cdf(trials, p, static_cast<std::int64_t>(j) - 2) <= alpha / 2) {
            lo_idx = j;
            break;
        }
    }
    std::uint64_t hi_idx = trials;
    for (std::uint64_t j = 1; j <= trials; ++j) {
        if (stats::binom_cdf(trials, p, static_cast<std::int64_t>(j) - 1) >= 1 - alpha / 2) {
            hi_idx = j;
            break;
        }
    }

    QuantileEstimate q;
    const std::uint64_t est = order_stat(est_idx);
    q.infinite = (est == kInf);
    q.estimate = q.infinite ? 0 : est;
    q.lo = order_stat(lo_idx) == kInf ? 0 : order_stat(lo_idx);
    const std::uint64_t hi = order_stat(hi_idx);
    q.hi_infinite = (hi == kInf);
    q.hi = q.hi_infinite ? 0 : hi;
    return q;
}

}  // namespace hra

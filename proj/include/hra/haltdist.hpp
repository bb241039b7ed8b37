#pragma once

#include "hra/errors.hpp"
#include "hra/process.hpp"
#include "hra/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace hra {

/// Probability mass over halting step counts, plus mass at infinity. Exact
/// instances come from coin-prefix enumeration; the mass at infinity then
/// lower-bounds the true non-halting probability (it includes runs still
/// alive at the enumeration budget).
struct HaltTimeDistribution {
    std::map<std::uint64_t, Rational> mass;
    Rational mass_at_infinity = 0;

    Rational total() const {
        Rational t = mass_at_infinity;
        for (const auto& [step, m] : mass) t += m;
        return t;
    }

    Rational cumulative(std::uint64_t t) const {
        Rational c = 0;
        for (const auto& [step, m] : mass) {
            if (step > t) break;
            c += m;
        }
        return c;
    }
};

/// Minimal t with cumulative halting mass >= p; nullopt means Infinite.
/// median time is quantile_time with p = 1/2.
std::optional<std::uint64_t> quantile_time(const HaltTimeDistribution& dist, const Rational& p);

/// Exact halting distribution by enumeration of coin prefixes: branches only
/// on bits the process actually consumes, so the tree size is bounded by the
/// reachable coin patterns. Throws EnumerationTooLarge past max_coin_bits.
HaltTimeDistribution exact_halt_distribution(const ProcessFactory& factory,
                                             std::uint64_t budget,
                                             unsigned max_coin_bits = 24);

struct QuantileEstimate {
    bool infinite = false;          // order statistic censored at budget
    std::uint64_t estimate = 0;
    std::uint64_t lo = 0;           // lower confidence order statistic
    bool hi_infinite = false;
    std::uint64_t hi = 0;
};

/// Order-statistic estimate of the probability-p halting time with a
/// distribution-free confidence interval from binomial coverage. Runs
/// censored at the budget count as Infinite.
QuantileEstimate estimate_quantile_time(const ProcessFactory& factory, double p,
                                        std::uint64_t trials, std::uint64_t budget, Seed seed,
                                        double confidence = 0.99);

}  // namespace hra

#pragma once

#include "hra/errors.hpp"
#include "hra/rational.hpp"
#include "hra/seed.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hra::stats {

/// Pr[Bin(n, p) >= threshold] by exact rational summation. Threshold may be
/// any rational; the event is over the integer count. Cap n <= 2000.
Rational binom_tail_ge_exact(std::uint64_t n, const Rational& p, const Rational& threshold);

/// Pr[Bin(n, p) > threshold] (strict), exact.
Rational binom_tail_gt_exact(std::uint64_t n, const Rational& p, const Rational& threshold);

/// Pr[Bin(n, p) >= threshold] for large n: exact rational below 2001 trials,
/// 50-digit floating summation above (absolute error well under 1e-12).
/// Throws TooLarge above the cap.
double binom_tail_ge(std::uint64_t n, const Rational& p, const Rational& threshold,
                     std::uint64_t cap = 100000);

/// Pr[Bin(n, p) <= k], fast double version for order-statistic intervals.
double binom_cdf(std::uint64_t n, double p, std::int64_t k);

/// e^{-mu delta^2 / 2}, the lower-tail bound Pr{X < (1-delta)mu}.
double chernoff_lower_bound(double mu, double delta);
/// e^{-mu delta^2 / 3}, the upper-tail bound Pr{X > (1+delta)mu}.
double chernoff_upper_bound(double mu, double delta);
/// (e^{-mu2 delta^2/2}, e^{-mu1 delta^2/3}) for mu1 >= E[X] >= mu2.
std::pair<double, double> bracketed_mean_bounds(double mu1, double mu2, double delta);

struct BoundReport {
    std::string name;
    double exact = 0;
    double bound = 0;
    bool satisfied = false;  // exact <= bound
};

struct ChernoffCell {
    std::uint64_t n;
    Rational p;
    Rational delta;  // in (0, 1]
};

/// Exact binomial tails of both Chernoff events against the bound
/// expressions, one pair of reports per cell.
std::vector<BoundReport> verify_chernoff_grid(const std::vector<ChernoffCell>& grid);

struct RateEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0;
    double lo = 0;
    double hi = 0;

    bool contains(double value) const { return lo <= value && value <= hi; }
};

RateEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials,
                             double confidence = 0.99);

/// Sample mean of a seeded Bernoulli trial with a Wilson score interval.
RateEstimate empirical_rate(const std::function<bool(Seed)>& trial, std::uint64_t trials,
                            Seed seed, double confidence = 0.99);

double normal_quantile_two_sided(double confidence);

}  // namespace hra::stats

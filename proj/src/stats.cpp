#include "hra/stats.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <random>

namespace hra::stats {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

constexpr std::uint64_t kExactCap = 2000;

BigInt floor_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (q * den > num) --q;  // round toward -inf
    return q;
}

/// Sum over the shorter side of the split at kmin; single denominator b^n.
Rational exact_tail(std::uint64_t n, const Rational& p, std::int64_t kmin) {
    if (kmin <= 0) return 1;
    if (kmin > static_cast<std::int64_t>(n)) return 0;
    if (p <= 0) return 0;  // kmin >= 1 here
    if (p >= 1) return 1;

    const BigInt a = boost::multiprecision::numerator(p);
    const BigInt b = boost::multiprecision::denominator(p);
    const BigInt c = b - a;

    auto pow_big = [](const BigInt& base, std::uint64_t e) {
        BigInt r = 1, x = base;
        while (e) {
            if (e & 1) r *= x;
            x *= x;
            e >>= 1;
        }
        return r;
    };

    const std::uint64_t km = static_cast<std::uint64_t>(kmin);
    const bool upper_side = (n - km + 1) <= km;

    BigInt sum = 0;
    if (upper_side) {
        // term_k = C(n,k) a^k c^(n-k), iterate k = n down to kmin.
        BigInt term = pow_big(a, n);
        for (std::uint64_t k = n;; --k) {
            sum += term;
            if (k == km) break;
            term = term * k * c / ((n - k + 1) * a);
        }
        return Rational(sum, pow_big(b, n));
    }
    // Lower side: 1 - sum_{k=0}^{kmin-1}.
    BigInt term = pow_big(c, n);
    for (std::uint64_t k = 0; k < km; ++k) {
        sum += term;
        term = term * (n - k) * a / ((k + 1) * c);
    }
    return 1 - Rational(sum, pow_big(b, n));
}

double highprec_tail(std::uint64_t n, const Rational& p, std::int64_t kmin) {
    if (kmin <= 0) return 1.0;
    if (kmin > static_cast<std::int64_t>(n)) return 0.0;
    if (p <= 0) return 0.0;
    if (p >= 1) return 1.0;

    const BigFloat pf(boost::multiprecision::numerator(p).convert_to<BigFloat>() /
                      boost::multiprecision::denominator(p).convert_to<BigFloat>());
    const BigFloat qf = 1 - pf;
    const BigFloat ratio = pf / qf;

    BigFloat term = boost::multiprecision::pow(qf, static_cast<int>(n));
    BigFloat tail = 0;
    const std::uint64_t km = static_cast<std::uint64_t>(kmin);
    if (km == 0) tail += term;
    for (std::uint64_t k = 0; k < n; ++k) {
        term *= ratio * BigFloat(n - k) / BigFloat(k + 1);
        if (k + 1 >= km) tail += term;
    }
    return tail.convert_to<double>();
}

}  // namespace

Rational binom_tail_ge_exact(std::uint64_t n, const Rational& p, const Rational& threshold) {
    if (n > kExactCap) throw TooLarge("binom_tail_ge_exact: n > 2000");
    if (p < 0 || p > 1) throw DomainError("binom_tail_ge_exact: p outside [0,1]");
    return exact_tail(n, p, ceil_rational(threshold).convert_to<std::int64_t>());
}

Rational binom_tail_gt_exact(std::uint64_t n, const Rational& p, const Rational& threshold) {
    if (n > kExactCap) throw TooLarge("binom_tail_gt_exact: n > 2000");
    if (p < 0 || p > 1) throw DomainError("binom_tail_gt_exact: p outside [0,1]");
    // X > t  <=>  X >= floor(t) + 1.
    return exact_tail(n, p, (floor_rational(threshold) + 1).convert_to<std::int64_t>());
}

double binom_tail_ge(std::uint64_t n, const Rational& p, const Rational& threshold,
                     std::uint64_t cap) {
    if (n > cap) throw TooLarge("binom_tail_ge: n above cap");
    if (p < 0 || p > 1) throw DomainError("binom_tail_ge: p outside [0,1]");
    const std::int64_t kmin = ceil_rational(threshold).convert_to<std::int64_t>();
    if (n <= kExactCap) return to_double(exact_tail(n, p, kmin));
    return highprec_tail(n, p, kmin);
}

double binom_cdf(std::uint64_t n, double p, std::int64_t k) {
    if (k < 0) return 0.0;
    if (k >= static_cast<std::int64_t>(n)) return 1.0;
    if (p <= 0) return 1.0;
    if (p >= 1) return 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    double cdf = 0;
    double lgn = std::lgamma(static_cast<double>(n) + 1);
    for (std::int64_t i = 0; i <= k; ++i) {
        double lterm = lgn - std::lgamma(static_cast<double>(i) + 1) -
                       std::lgamma(static_cast<double>(n - i) + 1) + i * lp + (n - i) * lq;
        cdf += std::exp(lterm);
    }
    return std::min(cdf, 1.0);
}

double chernoff_lower_bound(double mu, double delta) {
    if (!(delta > 0 && delta <= 1)) throw DomainError("chernoff: delta outside (0,1]");
    if (mu < 0) throw DomainError("chernoff: mu < 0");
    return std::exp(-mu * delta * delta / 2);
}

double chernoff_upper_bound(double mu, double delta) {
    if (!(delta > 0 && delta <= 1)) throw DomainError("chernoff: delta outside (0,1]");
    if (mu < 0) throw DomainError("chernoff: mu < 0");
    return std::exp(-mu * delta * delta / 3);
}

std::pair<double, double> bracketed_mean_bounds(double mu1, double mu2, double delta) {
    if (mu1 < mu2 || mu2 < 0) throw DomainError("bracketed_mean_bounds: need mu1 >= mu2 >= 0");
    if (!(delta > 0 && delta <= 1)) throw DomainError("bracketed_mean_bounds: delta outside (0,1]");
    return {std::exp(-mu2 * delta * delta / 2), std::exp(-mu1 * delta * delta / 3)};
}

std::vector<BoundReport> verify_chernoff_grid(const std::vector<ChernoffCell>& grid) {
    std::vector<BoundReport> reports;
    reports.reserve(grid.size() * 2);
    for (const auto& cell : grid) {
        const Rational mu = Rational(cell.n) * cell.p;
        const double mu_d = to_double(mu);
        const double delta_d = to_double(cell.delta);
        const std::string tag = "n=" + std::to_string(cell.n) + ",p=" + rational_string(cell.p) +
                                ",delta=" + rational_string(cell.delta);

        // Pr[X < (1-delta)mu] = 1 - Pr[X >= (1-delta)mu].
        const Rational lower_exact = 1 - binom_tail_ge_exact(cell.n, cell.p, (1 - cell.delta) * mu);
        const double lower_bound = chernoff_lower_bound(mu_d, delta_d);
        reports.push_back({"lower:" + tag, to_double(lower_exact), lower_bound,
                           to_double(lower_exact) <= lower_bound});

        const Rational upper_exact = binom_tail_gt_exact(cell.n, cell.p, (1 + cell.delta) * mu);
        const double upper_bound = chernoff_upper_bound(mu_d, delta_d);
        reports.push_back({"upper:" + tag, to_double(upper_exact), upper_bound,
                           to_double(upper_exact) <= upper_bound});
    }
    return reports;
}

double normal_quantile_two_sided(double confidence) {
    return std::sqrt(2.0) * boost::math::erf_inv(confidence);
}

RateEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
    if (trials == 0) throw DomainError("wilson_interval: zero trials");
    const double z = normal_quantile_two_sided(confidence);
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double center = (ph + z2 / (2 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
    RateEstimate est;
    est.successes = successes;
    est.trials = trials;
    est.estimate = ph;
    est.lo = std::max(0.0, center - half);
    est.hi = std::min(1.0, center + half);
    // At degenerate sample rates the exact endpoints are 0 and 1; keep them
    // exact instead of letting rounding pull the interval off the boundary.
    if (successes == 0) est.lo = 0.0;
    if (successes == trials) est.hi = 1.0;
    return est;
}

RateEstimate empirical_rate(const std::function<bool(Seed)>& trial, std::uint64_t trials,
                            Seed seed, double confidence) {
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (trial(derive_seed(seed, i))) ++successes;
    return wilson_interval(successes, trials, confidence);
}

}  // namespace hra::stats

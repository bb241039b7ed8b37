#pragma once

#include "hra/candidates.hpp"
#include "hra/certification.hpp"
#include "hra/haltdist.hpp"
#include "hra/polynomial.hpp"
#include "hra/stats.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hra {

/// Iterated base-2 logarithm: 0 for n <= 1, else 1 + log_star(ceil(log2 n)).
std::uint64_t log_star(std::uint64_t n);

struct UParams {
    std::size_t n = 0;
    std::uint64_t d = 1;
    std::uint64_t d_prime = 1;  // 16 d log*^2 n
    Rational f = 1;             // 17 d log*^2 n
    std::uint64_t k = 1;        // ceil(12 d' ln(16 d log*^2 n))
    std::uint64_t l = 1;        // ceil(30300 f ln(16 k d log*^2 n))
    std::uint64_t m = 1;        // choose_m(d, n)

    CertParams cert_params(std::uint64_t T) const {
        return {n, d_prime, T, k, l, f};
    }
};

/// Paper-exact parameter formulas; requires n >= 2 so log_star(n) >= 1.
UParams u_params(std::size_t n, std::uint64_t d);

/// Desk-scale override: explicit (d', f, k, l, m) with the same structure.
UParams scaled_params(std::size_t n, std::uint64_t d, std::uint64_t d_prime, const Rational& f,
                      std::uint64_t k, std::uint64_t l, std::uint64_t m);

/// Registered, indexed pool standing in for the enumeration of algorithms:
/// U schedules the first min(log* n, pool size) entries, each wrapped by the
/// semidecision-procedure interleave.
struct PoolEntry {
    std::size_t index = 1;  // 1-based, contiguous
    CandidateSpec spec;
};

std::vector<PoolEntry> make_pool(const std::vector<std::string>& names);

struct URunResult {
    bool output1 = false;
    std::uint64_t ticks = 0;              // total scheduler ticks until stop
    std::optional<std::size_t> winner;    // pool index whose certification accepted
    ScheduleTrace trace;
};

/// One run of U(x, d): branches run the wrapped candidate at parameter d',
/// record its halting step T_i, then run CERTIFY with timeout T_i; U emits
/// Output1 at the first accepting certification and stops all branches.
URunResult universal_run(const std::vector<PoolEntry>& pool,
                         const DistributionalProblem& problem, const BitString& x,
                         std::uint64_t d, const UParams& params, std::uint64_t budget,
                         Seed seed);

struct UCorrectnessReport {
    bool correct = false;          // upper confidence limit of bad mass < 1/d
    stats::RateEstimate bad_mass;  // over sampled non-members
    std::vector<double> per_sample_rates;
};

/// Samples x from D_n, estimates Pr[U(x,d)=1] per sample by repeated runs,
/// and bounds the D-mass of {x : rate > 1/4}.
UCorrectnessReport empirical_u_correctness(const std::vector<PoolEntry>& pool,
                                           const DistributionalProblem& problem, std::size_t n,
                                           std::uint64_t d, const UParams& params,
                                           std::uint64_t samples, std::uint64_t runs_per_sample,
                                           std::uint64_t budget, Seed seed);

// ---------------------------------------------------------------------------
// Time tables and the simulation / boundedness checkers.

struct TimeCell {
    BitString x;
    std::uint64_t d = 1;
    std::map<double, QuantileEstimate> quantiles;  // p -> estimate

    const QuantileEstimate* quantile(double p) const {
        auto it = quantiles.find(p);
        return it == quantiles.end() ? nullptr : &it->second;
    }
};

struct TimeTable {
    std::vector<TimeCell> cells;

    const TimeCell* find(const BitString& x, std::uint64_t d) const;
    void export_csv(std::ostream& out) const;
};

using TimedProcessBuilder =
    std::function<ProcessPtr(const BitString& x, std::uint64_t d, CoinContext ctx)>;

TimeTable measure_time_table(const TimedProcessBuilder& builder,
                             const std::vector<BitString>& xs,
                             const std::vector<std::uint64_t>& ds, std::uint64_t trials,
                             std::uint64_t budget, Seed seed,
                             const std::vector<double>& ps = {0.5, 0.75});

struct SimulationCheck {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> skipped;  // cells with no usable d' column
};

/// Median-entry check of t_S(x,d) <= max_{d' <= q(d|x|)} p(t_W(x,d') |x| d)
/// over the shared grid.
SimulationCheck check_simulation(const TimeTable& t_s, const TimeTable& t_w,
                                 const Polynomial& p, const Polynomial& q);

/// True iff every median entry satisfies t(x,d) <= p(d |x|).
bool check_poly_bounded(const TimeTable& table, const Polynomial& p,
                        std::vector<std::string>* violations = nullptr);

/// Least-squares helper proposing a witness polynomial of the given degree
/// for t <= p(d|x|); acceptance always goes through the explicit checkers.
Polynomial fit_poly_bound(const TimeTable& table, unsigned degree);

}  // namespace hra

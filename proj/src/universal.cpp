#include "hra/universal.hpp"

#include "hra/amplify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hra {

std::uint64_t log_star(std::uint64_t n) {
    if (n == 0) throw DomainError("log_star: n must be >= 1");
    std::uint64_t count = 0;
    while (n > 1) {
        // n <- ceil(log2 n)
        std::uint64_t bits = 0;
        std::uint64_t v = n;
        while (v > 1) {
            v >>= 1;
            ++bits;
        }
        const bool power_of_two = (n & (n - 1)) == 0;
        n = power_of_two ? bits : bits + 1;
        ++count;
    }
    return count;
}

UParams u_params(std::size_t n, std::uint64_t d) {
    if (n < 2) throw DomainError("u_params: n must be >= 2");
    if (d < 1) throw DomainError("u_params: d must be >= 1");
    const std::uint64_t ls = log_star(n);
    const std::uint64_t ls2 = ls * ls;
    UParams p;
    p.n = n;
    p.d = d;
    p.d_prime = 16 * d * ls2;
    p.f = Rational(17 * d * ls2);
    const double base = 16.0 * static_cast<double>(d) * static_cast<double>(ls2);
    p.k = static_cast<std::uint64_t>(
        std::ceil(12.0 * static_cast<double>(p.d_prime) * std::log(base)));
    p.l = static_cast<std::uint64_t>(
        std::ceil(30300.0 * to_double(p.f) *
                  std::log(16.0 * static_cast<double>(p.k) * static_cast<double>(d) *
                           static_cast<double>(ls2))));
    p.m = choose_m(d, n);
    return p;
}

UParams scaled_params(std::size_t n, std::uint64_t d, std::uint64_t d_prime, const Rational& f,
                      std::uint64_t k, std::uint64_t l, std::uint64_t m) {
    UParams p;
    p.n = n;
    p.d = d;
    p.d_prime = d_prime;
    p.f = f;
    p.k = k;
    p.l = l;
    p.m = m;
    return p;
}

std::vector<PoolEntry> make_pool(const std::vector<std::string>& names) {
    std::vector<PoolEntry> pool;
    pool.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        pool.push_back({i + 1, CandidateSpec::parse(names[i])});
    return pool;
}

namespace {

/// Branch i of U: run the wrapped candidate at parameter d', record its
/// halting step, then certify it with that step count as the timeout.
class UBranchProcess final : public SteppableProcess {
  public:
    UBranchProcess(const CandidateSpec& spec, const DistributionalProblem& problem,
                   const BitString& x, const UParams& params, Seed seed)
        : spec_(spec), problem_(problem), params_(params), seed_(seed) {
        candidate_ = enforce_conditions(
            make_candidate(spec_, problem_, x, params_.d_prime,
                           CoinContext::from_seed(derive_seed(seed_, "run"))),
            problem_, x);
    }

  protected:
    void do_step() override {
        if (candidate_) {
            candidate_->step();
            ++candidate_steps_;
            if (candidate_->output1()) {
                const std::uint64_t T_i = candidate_steps_;
                certify_ = std::make_unique<CertifyProcess>(
                    instance_factory(spec_, problem_, params_.d_prime, /*wrapped=*/true),
                    problem_, params_.cert_params(T_i), derive_seed(seed_, "certify"));
                candidate_.reset();
            } else if (!candidate_->running()) {
                diverge();
            }
            return;
        }
        certify_->step();
        if (certify_->output1()) {
            emit_output1();
        } else if (!certify_->running()) {
            diverge();  // certification rejected; this branch never halts
        }
    }

  private:
    const CandidateSpec& spec_;
    const DistributionalProblem& problem_;
    UParams params_;
    Seed seed_;
    ProcessPtr candidate_;
    std::uint64_t candidate_steps_ = 0;
    std::unique_ptr<CertifyProcess> certify_;
};

}  // namespace

URunResult universal_run(const std::vector<PoolEntry>& pool,
                         const DistributionalProblem& problem, const BitString& x,
                         std::uint64_t d, const UParams& params, std::uint64_t budget,
                         Seed seed) {
    if (pool.empty()) throw DomainError("universal_run: empty pool");
    const std::size_t count =
        std::min<std::size_t>(log_star(std::max<std::uint64_t>(x.size(), 1)), pool.size());
    if (count == 0) throw DomainError("universal_run: log_star(|x|) = 0, no process scheduled");

    std::vector<ProcessPtr> branches;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < count; ++i) {
        branches.push_back(std::make_unique<UBranchProcess>(pool[i].spec, problem, x, params,
                                                            derive_seed(seed, pool[i].index)));
        ids.push_back("A" + std::to_string(pool[i].index) + ":" + pool[i].spec.label());
    }
    ParallelComposite comp(std::move(branches), stop_when_any_output1(), std::move(ids));
    RunOutcome out = run_until(comp, budget);

    URunResult result;
    result.output1 = out.output1;
    result.trace = comp.trace();
    if (comp.running()) result.trace.stop_reason = "budget_exhausted";
    result.ticks = result.trace.total_ticks;
    if (out.output1) {
        for (std::size_t i = 0; i < count; ++i) {
            if (comp.child(i).output1()) {
                result.winner = pool[i].index;
                break;
            }
        }
    }
    return result;
}

UCorrectnessReport empirical_u_correctness(const std::vector<PoolEntry>& pool,
                                           const DistributionalProblem& problem, std::size_t n,
                                           std::uint64_t d, const UParams& params,
                                           std::uint64_t samples, std::uint64_t runs_per_sample,
                                           std::uint64_t budget, Seed seed) {
    if (!problem.supports_length(n))
        throw UnsupportedLength("empirical_u_correctness: unsupported length");
    UCorrectnessReport report;
    std::uint64_t bad = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const BitString x = problem.sample(n, derive_seed(derive_seed(seed, "x"), s));
        std::uint64_t ones = 0;
        for (std::uint64_t r = 0; r < runs_per_sample; ++r) {
            const Seed run_seed = derive_seed(derive_seed(derive_seed(seed, "run"), s), r);
            if (universal_run(pool, problem, x, d, params, budget, run_seed).output1) ++ones;
        }
        const double rate =
            static_cast<double>(ones) / static_cast<double>(runs_per_sample);
        report.per_sample_rates.push_back(rate);
        if (rate > 0.25) ++bad;
    }
    report.bad_mass = stats::wilson_interval(bad, samples);
    report.correct = report.bad_mass.hi < 1.0 / static_cast<double>(d);
    return report;
}

// ---------------------------------------------------------------------------

const TimeCell* TimeTable::find(const BitString& x, std::uint64_t d) const {
    for (const auto& cell : cells)
        if (cell.x == x && cell.d == d) return &cell;
    return nullptr;
}

void TimeTable::export_csv(std::ostream& out) const {
    out << "x,d,p,estimate,lo,hi\n";
    for (const auto& cell : cells) {
        for (const auto& [p, q] : cell.quantiles) {
            out << cell.x.str() << "," << cell.d << "," << p << ",";
            if (q.infinite)
                out << "inf";
            else
                out << q.estimate;
            out << "," << q.lo << ",";
            if (q.hi_infinite)
                out << "inf";
            else
                out << q.hi;
            out << "\n";
        }
    }
}

TimeTable measure_time_table(const TimedProcessBuilder& builder,
                             const std::vector<BitString>& xs,
                             const std::vector<std::uint64_t>& ds, std::uint64_t trials,
                             std::uint64_t budget, Seed seed, const std::vector<double>& ps) {
    TimeTable table;
    std::uint64_t cell_idx = 0;
    for (const auto& x : xs) {
        for (std::uint64_t d : ds) {
            TimeCell cell;
            cell.x = x;
            cell.d = d;
            const Seed cell_seed = derive_seed(seed, cell_idx++);
            ProcessFactory factory = [&builder, &x, d](CoinContext ctx) {
                return builder(x, d, std::move(ctx));
            };
            for (double p : ps)
                cell.quantiles[p] = estimate_quantile_time(factory, p, trials, budget, cell_seed);
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

SimulationCheck check_simulation(const TimeTable& t_s, const TimeTable& t_w,
                                 const Polynomial& p, const Polynomial& q) {
    SimulationCheck check;
    for (const auto& cell : t_s.cells) {
        const QuantileEstimate* med_s = cell.quantile(0.5);
        if (!med_s) throw GridMismatch("check_simulation: missing median in t_S");
        const double limit_dprime =
            q(static_cast<double>(cell.d) * static_cast<double>(cell.x.size()));
        bool found = false;
        double best = 0;
        for (const auto& wcell : t_w.cells) {
            if (wcell.x != cell.x) continue;
            if (static_cast<double>(wcell.d) > limit_dprime) continue;
            const QuantileEstimate* med_w = wcell.quantile(0.5);
            if (!med_w || med_w->infinite) continue;
            const double bound = p(static_cast<double>(med_w->estimate) *
                                   static_cast<double>(cell.x.size()) *
                                   static_cast<double>(cell.d));
            best = found ? std::max(best, bound) : bound;
            found = true;
        }
        const std::string tag = cell.x.str() + ",d=" + std::to_string(cell.d);
        if (!found) {
            check.skipped.push_back(tag);
            continue;
        }
        if (med_s->infinite || static_cast<double>(med_s->estimate) > best) {
            check.ok = false;
            check.violations.push_back(tag);
        }
    }
    return check;
}

bool check_poly_bounded(const TimeTable& table, const Polynomial& p,
                        std::vector<std::string>* violations) {
    bool ok = true;
    for (const auto& cell : table.cells) {
        const QuantileEstimate* med = cell.quantile(0.5);
        if (!med) continue;
        const double bound =
            p(static_cast<double>(cell.d) * static_cast<double>(cell.x.size()));
        if (med->infinite || static_cast<double>(med->estimate) > bound) {
            ok = false;
            if (violations)
                violations->push_back(cell.x.str() + ",d=" + std::to_string(cell.d));
        }
    }
    return ok;
}

Polynomial fit_poly_bound(const TimeTable& table, unsigned degree) {
    // Conservative envelope fit: scale the monomial z^degree to cover every
    // median entry, with a constant floor from the smallest entries.
    double scale = 0;
    double floor = 0;
    for (const auto& cell : table.cells) {
        const QuantileEstimate* med = cell.quantile(0.5);
        if (!med || med->infinite) continue;
        const double z = static_cast<double>(cell.d) * static_cast<double>(cell.x.size());
        const double t = static_cast<double>(med->estimate);
        if (z >= 1) scale = std::max(scale, t / std::pow(z, degree));
        floor = std::max(floor, t);
    }
    Polynomial p;
    p.coeffs.assign(degree + 1, 0.0);
    p.coeffs[0] = floor;
    p.coeffs[degree] = scale;
    return p;
}

}  // namespace hra

#include "hra/certification.hpp"

#include "hra/stats.hpp"

#include <cmath>
#include <map>

namespace hra {

namespace {

bool test_threshold_reached(std::uint64_t faults, std::uint64_t l, const Rational& f) {
    return Rational(faults) >= Rational(l) / f;
}

bool certify_threshold_reached(std::uint64_t rejected, std::uint64_t k, std::uint64_t d_prime) {
    return Rational(rejected) >= Rational(k) / (2 * Rational(d_prime));
}

}  // namespace

CandidateInstanceFactory instance_factory(const CandidateSpec& spec,
                                          const DistributionalProblem& problem,
                                          std::uint64_t d_prime, bool wrapped) {
    return [&spec, &problem, d_prime, wrapped](const BitString& x, Seed seed) {
        ProcessPtr proc =
            make_candidate(spec, problem, x, d_prime, CoinContext::from_seed(seed));
        if (wrapped) proc = enforce_conditions(std::move(proc), problem, x);
        return proc;
    };
}

TestOutcome run_test(const CandidateInstanceFactory& factory, const BitString& x,
                     const TestParams& params, Seed seed) {
    TestOutcome outcome;
    for (std::uint64_t i = 0; i < params.l; ++i) {
        ProcessPtr proc = factory(x, derive_seed(seed, i));
        if (run_until(*proc, params.T).output1) ++outcome.faults;
    }
    outcome.reject = test_threshold_reached(outcome.faults, params.l, params.f);
    return outcome;
}

TestOutcome run_test(const CandidateSpec& spec, const DistributionalProblem& problem,
                     const BitString& x, std::uint64_t d_prime, const TestParams& params,
                     Seed seed) {
    return run_test(instance_factory(spec, problem, d_prime), x, params, seed);
}

Rational test_reject_probability_exact(const Rational& p_T, std::uint64_t l, const Rational& f) {
    if (p_T < 0 || p_T > 1) throw DomainError("test_reject_probability_exact: p_T outside [0,1]");
    return stats::binom_tail_ge_exact(l, p_T, Rational(l) / f);
}

CertifyOutcome run_certify(const CandidateInstanceFactory& factory,
                           const DistributionalProblem& problem, const CertParams& params,
                           Seed seed) {
    const Seed sample_seed = derive_seed(seed, "samples");
    const Seed test_seed = derive_seed(seed, "tests");
    CertifyOutcome outcome;
    outcome.samples.reserve(params.k);
    for (std::uint64_t i = 0; i < params.k; ++i) {
        SampleRecord rec;
        rec.x = problem.sample(params.n, derive_seed(sample_seed, i));
        TestOutcome t = run_test(factory, rec.x, params.test_params(), derive_seed(test_seed, i));
        rec.test_rejected = t.reject;
        rec.faults = t.faults;
        if (t.reject) ++outcome.rejected_tests;
        outcome.samples.push_back(std::move(rec));
    }
    outcome.reject = certify_threshold_reached(outcome.rejected_tests, params.k, params.d_prime);
    return outcome;
}

CertifyOutcome run_certify(const CandidateSpec& spec, const DistributionalProblem& problem,
                           const CertParams& params, Seed seed) {
    return run_certify(instance_factory(spec, problem, params.d_prime), problem, params, seed);
}

Rational certify_accept_probability_exact(
    const DistributionalProblem& problem, std::size_t n,
    const std::function<Rational(const BitString&)>& halt_prob_at_T, const CertParams& params) {
    std::map<Rational, Rational> reject_by_pt;
    Rational q = 0;
    for (const auto& entry : problem.exact_support(n)) {
        const Rational p_T = halt_prob_at_T(entry.x);
        auto it = reject_by_pt.find(p_T);
        if (it == reject_by_pt.end()) {
            it = reject_by_pt.emplace(p_T,
                                      test_reject_probability_exact(p_T, params.l, params.f))
                     .first;
        }
        q += entry.prob * it->second;
    }
    const Rational reject =
        stats::binom_tail_ge_exact(params.k, q, Rational(params.k) / (2 * Rational(params.d_prime)));
    return 1 - reject;
}

std::pair<double, double> test_error_bounds(std::uint64_t l, const Rational& f) {
    if (l == 0 || f <= 0) throw DomainError("test_error_bounds: l, f must be positive");
    const double fd = to_double(f);
    const double ld = static_cast<double>(l);
    return {std::exp(-ld / (30300.0 * fd)), std::exp(-ld / (20000.0 * fd))};
}

std::pair<double, double> certify_error_bounds(std::uint64_t k, std::uint64_t d_prime, std::uint64_t l,
                                         const Rational& f) {
    if (k == 0 || d_prime == 0) throw DomainError("certify_error_bounds: k, d' must be positive");
    auto [reject_side, accept_side] = test_error_bounds(l, f);
    const double kd = static_cast<double>(k);
    const double dp = static_cast<double>(d_prime);
    return {std::exp(-kd / (12.0 * dp)) + kd * reject_side,
            std::exp(-kd / (8.0 * dp)) + kd * accept_side};
}

CertifyProcess::CertifyProcess(CandidateInstanceFactory factory,
                               const DistributionalProblem& problem, CertParams params, Seed seed)
    : factory_(std::move(factory)), problem_(problem), params_(std::move(params)), seed_(seed) {}

void CertifyProcess::begin_instance() {
    instance_ = factory_(current_x_,
                         derive_seed(derive_seed(derive_seed(seed_, "tests"), sample_idx_),
                                     rep_idx_));
    instance_steps_ = 0;
}

void CertifyProcess::do_step() {
    if (instance_) {
        instance_->step();
        ++instance_steps_;
        const bool faulted = instance_->output1();
        if (faulted || instance_steps_ >= params_.T || !instance_->running()) {
            if (faulted) ++faults_;
            instance_.reset();
            ++rep_idx_;
            if (rep_idx_ == params_.l) {
                if (test_threshold_reached(faults_, params_.l, params_.f)) ++rejected_tests_;
                rep_idx_ = 0;
                faults_ = 0;
                have_sample_ = false;
                ++sample_idx_;
            }
        }
        return;
    }
    if (sample_idx_ == params_.k) {
        // Decision tick.
        if (certify_threshold_reached(rejected_tests_, params_.k, params_.d_prime))
            halt_no_output();  // reject
        else
            emit_output1();  // accept
        return;
    }
    if (!have_sample_) {
        // Sample-draw tick.
        current_x_ =
            problem_.sample(params_.n, derive_seed(derive_seed(seed_, "samples"), sample_idx_));
        have_sample_ = true;
        begin_instance();
        return;
    }
    begin_instance();
}

}  // namespace hra

#pragma once

#include "hra/candidates.hpp"
#include "hra/problems.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace hra {

struct TestParams {
    std::uint64_t T = 1;  // per-run step timeout
    std::uint64_t l = 1;  // repetitions
    Rational f = 1;       // fault divisor; reject when faults >= l/f
};

struct CertParams {
    std::size_t n = 0;
    std::uint64_t d_prime = 1;
    std::uint64_t T = 1;
    std::uint64_t k = 1;  // sample count; reject when rejected tests >= k/(2 d')
    std::uint64_t l = 1;
    Rational f = 1;

    TestParams test_params() const { return {T, l, f}; }
};

/// One fresh candidate run for TEST, keyed by input and derived seed.
using CandidateInstanceFactory =
    std::function<ProcessPtr(const BitString& x, Seed seed)>;

CandidateInstanceFactory instance_factory(const CandidateSpec& spec,
                                          const DistributionalProblem& problem,
                                          std::uint64_t d_prime, bool wrapped = false);

struct TestOutcome {
    bool reject = false;
    std::uint64_t faults = 0;  // runs that reached Output1 within T steps
};

/// TEST: l independent runs with timeout T; rejects when the fault count
/// reaches l/f (exact rational comparison, non-strict >=).
TestOutcome run_test(const CandidateInstanceFactory& factory, const BitString& x,
                     const TestParams& params, Seed seed);
TestOutcome run_test(const CandidateSpec& spec, const DistributionalProblem& problem,
                     const BitString& x, std::uint64_t d_prime, const TestParams& params,
                     Seed seed);

/// Pr[TEST rejects] = Pr[Bin(l, p_T) >= l/f], where p_T is the per-run
/// probability of halting within T steps.
Rational test_reject_probability_exact(const Rational& p_T, std::uint64_t l, const Rational& f);

struct SampleRecord {
    BitString x;
    bool test_rejected = false;
    std::uint64_t faults = 0;
};

struct CertifyOutcome {
    bool reject = false;
    std::uint64_t rejected_tests = 0;
    std::vector<SampleRecord> samples;
};

/// CERTIFY: k samples from D_n, one TEST per sample; rejects when the
/// number of rejecting TESTs reaches k/(2 d').
CertifyOutcome run_certify(const CandidateInstanceFactory& factory,
                           const DistributionalProblem& problem, const CertParams& params,
                           Seed seed);
CertifyOutcome run_certify(const CandidateSpec& spec, const DistributionalProblem& problem,
                           const CertParams& params, Seed seed);

/// Exact two-level composition over a finite-support problem:
/// q = sum_x D_n(x) * Pr[TEST rejects at p_T(x)], result Pr[Bin(k,q) < k/(2d')].
Rational certify_accept_probability_exact(
    const DistributionalProblem& problem, std::size_t n,
    const std::function<Rational(const BitString&)>& halt_prob_at_T, const CertParams& params);

/// (reject-side, accept-side): (e^{-l/(30300 f)}, e^{-l/(20000 f)}).
std::pair<double, double> test_error_bounds(std::uint64_t l, const Rational& f);

/// (correct-case failure, incorrect-case acceptance):
/// (e^{-k/(12d')} + k e^{-l/(30300 f)}, e^{-k/(8d')} + k e^{-l/(20000 f)}).
std::pair<double, double> certify_error_bounds(std::uint64_t k, std::uint64_t d_prime, std::uint64_t l,
                                         const Rational& f);

/// CERTIFY as a resumable process (the universal automatizer charges its
/// certification work to the owning branch's tick count). Output1 = accept,
/// HaltedNoOutput = reject. One tick per inner candidate step, per sample
/// draw, and per decision.
class CertifyProcess final : public SteppableProcess {
  public:
    CertifyProcess(CandidateInstanceFactory factory, const DistributionalProblem& problem,
                   CertParams params, Seed seed);

  protected:
    void do_step() override;

  private:
    void begin_instance();

    CandidateInstanceFactory factory_;
    const DistributionalProblem& problem_;
    CertParams params_;
    Seed seed_;

    std::uint64_t sample_idx_ = 0;
    std::uint64_t rep_idx_ = 0;
    std::uint64_t faults_ = 0;
    std::uint64_t rejected_tests_ = 0;
    BitString current_x_;
    bool have_sample_ = false;
    ProcessPtr instance_;
    std::uint64_t instance_steps_ = 0;
};

}  // namespace hra

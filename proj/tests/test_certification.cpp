#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hra/certification.hpp"
#include "hra/haltdist.hpp"
#include "hra/stats.hpp"

#include <cmath>

using namespace hra;

namespace {

const ParityProblem kParity;

CandidateSpec parse(const std::string& s) { return CandidateSpec::parse(s); }

}  // namespace

TEST_CASE("TEST rejects chronic halters and accepts silent candidates") {
    const BitString x("1000");
    TestParams params{/*T=*/5, /*l=*/20, /*f=*/Rational(10)};
    const auto rej = run_test(parse("AlwaysOne"), kParity, x, 8, params, 1);
    CHECK(rej.reject);
    CHECK(rej.faults == 20);

    const auto acc = run_test(parse("HonestDecider"), kParity, x, 8, params, 1);
    CHECK_FALSE(acc.reject);
    CHECK(acc.faults == 0);
}

TEST_CASE("TEST reject frequency matches the closed-form probability") {
    // Per-run halt probability 1/8 within T >= 3; threshold l/f = 40/8 = 5.
    const BitString x("1000");
    TestParams params{/*T=*/5, /*l=*/40, /*f=*/Rational(8)};
    const auto factory = instance_factory(parse("CoinLiar:1/8"), kParity, 8);
    const std::uint64_t trials = 10000;
    std::uint64_t rejects = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (run_test(factory, x, params, derive_seed(31, t)).reject) ++rejects;
    const Rational exact =
        test_reject_probability_exact(Rational(1, 8), params.l, params.f);
    CHECK(exact == stats::binom_tail_ge_exact(40, Rational(1, 8), Rational(5)));
    CHECK(stats::wilson_interval(rejects, trials).contains(to_double(exact)));
}

TEST_CASE("closed-form TEST probabilities at analytic points") {
    CHECK(test_reject_probability_exact(Rational(0), 200, Rational(10)) == Rational(0));
    CHECK(test_reject_probability_exact(Rational(1), 200, Rational(10)) == Rational(1));
    // Halt probability at half the fault threshold rate.
    CHECK(to_double(test_reject_probability_exact(Rational(1, 20), 200, Rational(10))) ==
          doctest::Approx(0.002664579549829447).epsilon(1e-12));
}

TEST_CASE("CERTIFY decisions at the deterministic extremes") {
    CertParams params;
    params.n = 8;
    params.d_prime = 8;
    params.T = 20;
    params.k = 40;
    params.l = 80;
    params.f = 9;

    for (Seed s = 0; s < 20; ++s) {
        CHECK_FALSE(run_certify(parse("HonestDecider"), kParity, params, s).reject);
        CHECK(run_certify(parse("AlwaysOne"), kParity, params, s).reject);
    }

    // Exact composition agrees: all p_T = 0 -> accept probability 1;
    // all p_T = 1 -> 0.
    CHECK(certify_accept_probability_exact(
              kParity, 8, [](const BitString&) { return Rational(0); }, params) == Rational(1));
    CHECK(certify_accept_probability_exact(
              kParity, 8, [](const BitString&) { return Rational(1); }, params) == Rational(0));
}

TEST_CASE("two-level exact composition matches Monte Carlo for a liar") {
    // Scaled cell: k=60, l=120, f=8, d'=4; CoinLiar rate 1/8 halts within
    // T=5 with probability exactly 1/8 on every sampled non-member.
    CertParams params;
    params.n = 8;
    params.d_prime = 4;
    params.T = 5;
    params.k = 60;
    params.l = 120;
    params.f = 8;
    const Rational q = test_reject_probability_exact(Rational(1, 8), params.l, params.f);
    const Rational accept_exact = certify_accept_probability_exact(
        kParity, 8, [](const BitString&) { return Rational(1, 8); }, params);
    CHECK(accept_exact ==
          Rational(1) - stats::binom_tail_ge_exact(params.k, q, Rational(60, 8)));

    const auto factory = instance_factory(parse("CoinLiar:1/8"), kParity, params.d_prime);
    const std::uint64_t trials = 1000;
    std::uint64_t accepts = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (!run_certify(factory, kParity, params, derive_seed(77, t)).reject) ++accepts;
    CHECK(stats::wilson_interval(accepts, trials).contains(to_double(accept_exact)));
}

TEST_CASE("planted liar composition: per-input halt probabilities differ") {
    CertParams params;
    params.n = 8;
    params.d_prime = 8;
    params.T = 5;
    params.k = 40;
    params.l = 80;
    params.f = 9;
    const auto spec = parse("PlantedLiar:1/2");
    const auto p_T = [&](const BitString& x) {
        return spec.in_bad_set(x) ? Rational(1, 2) : Rational(0);
    };
    const Rational exact = certify_accept_probability_exact(kParity, 8, p_T, params);

    const auto factory = instance_factory(spec, kParity, params.d_prime);
    const std::uint64_t trials = 1000;
    std::uint64_t accepts = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (!run_certify(factory, kParity, params, derive_seed(123, t)).reject) ++accepts;
    CHECK(stats::wilson_interval(accepts, trials).contains(to_double(exact)));
}

TEST_CASE("bound expressions at substitution points") {
    auto [r1, a1] = test_error_bounds(30300 * 5, Rational(5));
    CHECK(r1 == doctest::Approx(std::exp(-1.0)));
    auto [r2, a2] = test_error_bounds(20000 * 5, Rational(5));
    CHECK(a2 == doctest::Approx(std::exp(-1.0)));
    auto [r3, a3] = test_error_bounds(200, Rational(10));
    CHECK(r3 == doctest::Approx(std::exp(-200.0 / 303000.0)));
    CHECK(a3 == doctest::Approx(std::exp(-1e-3)));

    auto [c1, c2] = certify_error_bounds(17035, 256, 125999252, Rational(272));
    CHECK(c1 == doctest::Approx(std::exp(-17035.0 / 3072.0) +
                                17035.0 * std::exp(-125999252.0 / (30300.0 * 272.0))));
    CHECK(c1 < 1.0 / 128.0);
    CHECK(c2 < 1.0 / 128.0);
}

TEST_CASE("reject-side and accept-side tail bounds hold in exact form") {
    // Candidates halting rarely are rejected rarely; chronic halters are
    // accepted rarely. Exact tails against the exponential envelopes.
    for (std::uint64_t l : {50ULL, 200ULL, 1000ULL}) {
        for (std::uint64_t fv : {2ULL, 10ULL}) {
            const Rational f(fv);
            auto [reject_bound, accept_bound] = test_error_bounds(l, f);
            const Rational p_low = Rational(1) / (Rational(101, 100) * f) * Rational(9, 10);
            const Rational rej = test_reject_probability_exact(p_low, l, f);
            CAPTURE(l);
            CAPTURE(fv);
            CHECK(to_double(rej) <= reject_bound);
            const Rational p_high = Rational(1) / (Rational(99, 100) * f) * Rational(11, 10);
            if (p_high <= 1) {
                const Rational acc = Rational(1) - test_reject_probability_exact(p_high, l, f);
                CHECK(to_double(acc) <= accept_bound);
            }
        }
    }
}

TEST_CASE("certification separates correct from incorrect at a nonvacuous cell") {
    // The two-sided guarantee only becomes nonvacuous for large l; this cell
    // uses l = 5*10^5 through the high-precision tail path.
    const std::uint64_t k = 240, d_prime = 1, l = 500000;
    const Rational f(2);
    auto [fail_bound, accept_bound] = certify_error_bounds(k, d_prime, l, f);
    CHECK(fail_bound < 1);
    CHECK(accept_bound < 1);

    // Repetition counts this size exceed the exact-rational tail cap, so the
    // per-test reject probability goes through the high-precision path and
    // only the outer k-sample tail stays exact.
    const Rational threshold = Rational(l) / f;  // 250000
    const auto outer_accept = [&](double per_test_reject) {
        const Rational q(per_test_reject);
        return Rational(1) -
               stats::binom_tail_ge_exact(k, q, Rational(k) / (2 * Rational(d_prime)));
    };

    // Correct case: halts at rate 1/4 on a D-mass-1/8 bad set, silent
    // elsewhere; 1/4 < 1/(1.011 f) and mass 1/8 < 1/(4 d'), so the
    // candidate is within the correct-side hypothesis.
    const double reject_quiet = stats::binom_tail_ge(l, Rational(0), threshold, 600000);
    const double reject_planted = stats::binom_tail_ge(l, Rational(1, 4), threshold, 600000);
    const double q_good = (1.0 / 8.0) * reject_planted + (7.0 / 8.0) * reject_quiet;
    CHECK(to_double(outer_accept(q_good)) >= 1.0 - fail_bound);

    // Incorrect case: halts everywhere within T at rate 3/5 > 1/(0.99 f).
    const double q_bad = stats::binom_tail_ge(l, Rational(3, 5), threshold, 600000);
    CHECK(to_double(outer_accept(q_bad)) <= accept_bound);
}

TEST_CASE("resumable certification process reaches the same decision") {
    CertParams params;
    params.n = 8;
    params.d_prime = 8;
    params.T = 10;
    params.k = 20;
    params.l = 20;
    params.f = 9;
    for (const char* name : {"HonestDecider", "AlwaysOne", "CoinLiar:1/2"}) {
        const auto spec = parse(name);
        const auto factory = instance_factory(spec, kParity, params.d_prime);
        for (Seed s = 0; s < 10; ++s) {
            const bool batch_accept = !run_certify(factory, kParity, params, s).reject;
            CertifyProcess proc(factory, kParity, params, s);
            const auto r = run_until(proc, 100000000);
            const bool proc_accept = r.output1;
            CHECK(proc.state() != ProcState::Running);
            CAPTURE(name);
            CHECK(batch_accept == proc_accept);
        }
    }
}

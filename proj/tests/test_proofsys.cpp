#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hra/proofsys.hpp"
#include "hra/haltdist.hpp"

using namespace hra;

namespace {

BitString first_tautology() {
    TautProblem taut(2);
    const auto ts = taut.tautologies(6);
    REQUIRE(!ts.empty());
    return ts.front();
}

}  // namespace

TEST_CASE("truth-table verifier: proofs exist exactly for tautologies") {
    TautProblem taut(2);
    TruthTableSystem system(taut);
    const BitString t = first_tautology();
    const auto yes = is_proof(system, t, BitString(""), 1, 100, 1);
    CHECK(yes.verdict == ProofVerdict::Proof);
    CHECK(yes.rate.estimate == 1.0);

    const BitString non = taut.sample(6, 3);
    const auto no = is_proof(system, non, BitString(""), 1, 100, 1);
    CHECK(no.verdict == ProofVerdict::NotProof);
    CHECK(no.rate.estimate == 0.0);
}

TEST_CASE("noisy verifier verdicts track the planted acceptance rate") {
    NoisyStampSystem system;
    const BitString x("1000");
    const BitString w("0101");
    system.plant(x, w, Rational(3, 10));
    CHECK(is_proof(system, x, w, 1, 200, 5).verdict == ProofVerdict::Borderline);
    system.plant(x, w, Rational(1));
    CHECK(is_proof(system, x, w, 1, 200, 5).verdict == ProofVerdict::Proof);
    // Unplanted pairs use the default rate 0.
    CHECK(is_proof(system, x, BitString("11"), 1, 200, 5).verdict == ProofVerdict::NotProof);
}

TEST_CASE("completeness search recovers a planted witness") {
    NoisyStampSystem system;
    const BitString x("1000");
    const BitString w("0101");
    system.plant(x, w, Rational(1));
    const auto r = check_completeness(system, x, 1, /*witness_bound=*/4, 100, 7);
    CHECK(r.complete);
    CHECK(r.witness == w);

    // Nothing planted: no witness ever reaches the proof threshold.
    NoisyStampSystem empty;
    CHECK_FALSE(check_completeness(empty, x, 1, 4, 100, 7).complete);

    CHECK_THROWS_AS(check_completeness(system, x, 1, 40, 10, 7), EnumerationTooLarge);
}

TEST_CASE("soundness: offender mass is exact and compared against 1/d") {
    TautProblem taut(2);

    // The truth-table system accepts nothing off the tautologies, so the
    // sampled non-members carry offender mass zero.
    TruthTableSystem honest(taut);
    const auto clean = check_soundness(honest, taut, 6, 4, /*witness_bound=*/2, 50, 11);
    CHECK(clean.sound);
    CHECK(clean.offending_mass == Rational(0));

    // Plant a certain proof on a support subset of known mass under the
    // parity distribution: odd-parity length-4 strings starting 111 = {1110},
    // mass 1/8 of the 8 support points.
    ParityProblem parity;
    NoisyStampSystem stamp;
    stamp.plant(BitString("1110"), BitString(""), Rational(1));
    const auto at_d4 = check_soundness(stamp, parity, 4, 4, 2, 50, 13);
    CHECK(at_d4.offending_mass == Rational(1, 8));
    CHECK(at_d4.sound);  // 1/8 < 1/4
    const auto at_d8 = check_soundness(stamp, parity, 4, 8, 2, 50, 13);
    CHECK(at_d8.offending_mass == Rational(1, 8));
    CHECK_FALSE(at_d8.sound);  // 1/8 >= 1/8
}

TEST_CASE("vote pass probability at analytic points") {
    const VoteConfig scaled{10, 100, 40};
    CHECK(vote_pass_probability_exact(Rational(0), scaled) == 0.0);
    CHECK(vote_pass_probability_exact(Rational(1), scaled) == 1.0);
    CHECK(vote_pass_probability_exact(Rational(1, 2), scaled) ==
          doctest::Approx(0.9823998998911476).epsilon(1e-12));
    CHECK(vote_pass_probability_exact(Rational(1, 4), scaled) ==
          doctest::Approx(0.0006865922079629911).epsilon(1e-12));

    const VoteConfig full{1000, 10000, 4000};
    CHECK(vote_pass_probability_exact(Rational(1, 2), full) >= 1.0 - 1e-8);
    CHECK(vote_pass_probability_exact(Rational(1, 4), full) <= 1e-20);
}

TEST_CASE("composite automatizer accepts tautologies through the vote") {
    TautProblem taut(2);
    TruthTableSystem system(taut);
    TrivialAutomatization trivial;
    const VoteConfig config{10, 100, 40};
    const BitString t = first_tautology();
    for (Seed s = 0; s < 5; ++s) {
        auto proc = a_pi_process(system, trivial, taut, t, 1, config,
                                 CoinContext::from_seed(s));
        CHECK(run_until(*proc, 1000000).output1);
    }
}

TEST_CASE("composite automatizer stays silent on non-members") {
    TautProblem taut(2);
    TruthTableSystem system(taut);
    TrivialAutomatization trivial;
    const VoteConfig config{10, 100, 40};
    for (Seed s = 0; s < 5; ++s) {
        const BitString x = taut.sample(6, derive_seed(99, s));
        auto proc = a_pi_process(system, trivial, taut, x, 1, config,
                                 CoinContext::from_seed(s));
        CHECK_FALSE(run_until(*proc, 1000000).output1);
    }
}

TEST_CASE("the semidecision branch rescues members when search is useless") {
    TautProblem taut(2);
    // A verifier that never accepts: every vote fails, but the membership
    // branch still accepts tautologies.
    NoisyStampSystem rejecting;
    TrivialAutomatization trivial;
    const VoteConfig config{10, 100, 40};
    const BitString t = first_tautology();
    auto proc = a_pi_process(rejecting, trivial, taut, t, 1, config,
                             CoinContext::from_seed(2));
    CHECK(run_until(*proc, 1000000).output1);
}

TEST_CASE("shortest proof sizes for witness-free and verbatim systems") {
    TautProblem taut(2);
    const BitString t = first_tautology();

    TruthTableSystem table(taut);
    const auto zero = shortest_proof_size(table, t, 1, 4, 100, 3);
    CHECK(zero.found);
    CHECK(zero.size == 0);

    VerbatimSystem verbatim(taut);
    const auto full = shortest_proof_size(verbatim, t, 1, t.size(), 100, 3);
    CHECK(full.found);
    CHECK(full.size == t.size());
    // A bound below |x| leaves the verbatim system without any proof.
    CHECK_FALSE(shortest_proof_size(verbatim, t, 1, t.size() - 1, 100, 3).found);
}

TEST_CASE("proof-size simulation check in both directions") {
    TautProblem taut(2);
    TruthTableSystem table(taut);
    VerbatimSystem verbatim(taut);
    const std::vector<BitString> xs = {first_tautology()};
    const std::vector<std::uint64_t> ds = {1, 2};
    const Polynomial identity{{0.0, 1.0}};

    // Size-0 proofs are simulated by anything.
    const auto fwd =
        check_ps_simulation(table, verbatim, identity, identity, xs, ds, 6, 100, 17);
    CHECK(fwd.ok);
    CHECK(fwd.failures.empty());

    // Size-|x| proofs cannot be simulated within a sub-unit constant bound of
    // the size-0 system.
    const Polynomial half{{0.5}};
    const auto rev = check_ps_simulation(verbatim, table, half, identity, xs, ds, 6, 100, 17);
    CHECK_FALSE(rev.ok);
    CHECK_FALSE(rev.failures.empty());
}

TEST_CASE("proof-size polynomial bound check") {
    TautProblem taut(2);
    const std::vector<BitString> xs = {first_tautology()};
    TruthTableSystem table(taut);
    CHECK(check_ps_poly_bounded(table, xs, {1, 2}, Polynomial{{0.0}}, 4, 100, 19));

    VerbatimSystem verbatim(taut);
    CHECK(check_ps_poly_bounded(verbatim, xs, {1}, Polynomial{{0.0, 1.0}}, 6, 100, 19));
    CHECK_FALSE(check_ps_poly_bounded(verbatim, xs, {1}, Polynomial{{0.0}}, 6, 100, 19));
}

#pragma once

#include "hra/polynomial.hpp"
#include "hra/problems.hpp"
#include "hra/stats.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace hra {

/// Randomized verifier Pi(x, w, d) with a declared polynomial tick budget.
/// One execution costs run_cost ticks and always halts with accept/reject.
class HeuristicProofSystem {
  public:
    virtual ~HeuristicProofSystem() = default;
    virtual std::string name() const = 0;
    virtual std::uint64_t run_cost(const BitString& x, const BitString& w,
                                   std::uint64_t d) const = 0;
    virtual bool execute(const BitString& x, const BitString& w, std::uint64_t d,
                         CoinSource& coins) const = 0;
};

/// Deterministic tautology verifier that ignores the witness: accepts iff
/// the truth table of x is all-true. The empty string is a proof of every
/// member.
class TruthTableSystem final : public HeuristicProofSystem {
  public:
    explicit TruthTableSystem(const TautProblem& problem) : problem_(problem) {}
    std::string name() const override { return "TruthTable"; }
    std::uint64_t run_cost(const BitString& x, const BitString& w,
                           std::uint64_t d) const override;
    bool execute(const BitString& x, const BitString& w, std::uint64_t d,
                 CoinSource& coins) const override;

  private:
    const TautProblem& problem_;
};

/// Accepts with a planted per-(x, w) rate; every rate is exactly known, so
/// all checks have exact oracles. Unlisted pairs use the default rate.
class NoisyStampSystem final : public HeuristicProofSystem {
  public:
    explicit NoisyStampSystem(Rational default_rate = 0)
        : default_rate_(std::move(default_rate)) {}

    void plant(const BitString& x, const BitString& w, Rational rate) {
        rates_[{x.str(), w.str()}] = std::move(rate);
    }

    Rational rate(const BitString& x, const BitString& w) const {
        auto it = rates_.find({x.str(), w.str()});
        return it == rates_.end() ? default_rate_ : it->second;
    }

    std::string name() const override { return "NoisyStamp"; }
    std::uint64_t run_cost(const BitString&, const BitString&, std::uint64_t) const override {
        return 4;
    }
    bool execute(const BitString& x, const BitString& w, std::uint64_t,
                 CoinSource& coins) const override {
        return coins.bernoulli(rate(x, w));
    }

  private:
    std::map<std::pair<std::string, std::string>, Rational> rates_;
    Rational default_rate_;
};

/// Deterministic system whose only proof of x is x itself (proof-size
/// separation fixture for the simulation checks).
class VerbatimSystem final : public HeuristicProofSystem {
  public:
    explicit VerbatimSystem(const DistributionalProblem& problem) : problem_(problem) {}
    std::string name() const override { return "Verbatim"; }
    std::uint64_t run_cost(const BitString& x, const BitString& w,
                           std::uint64_t) const override {
        return x.size() + w.size() + 1;
    }
    bool execute(const BitString& x, const BitString& w, std::uint64_t,
                 CoinSource&) const override {
        return w == x && problem_.is_member(x);
    }

  private:
    const DistributionalProblem& problem_;
};

/// Proof search: a resumable process emitting a candidate proof string as
/// its Output1 payload.
class Automatization {
  public:
    virtual ~Automatization() = default;
    virtual std::string name() const = 0;
    virtual ProcessPtr search(const BitString& x, std::uint64_t d, CoinContext ctx) const = 0;
};

/// Emits the empty witness after a constant number of ticks; the right
/// automatization for witness-ignoring systems.
class TrivialAutomatization final : public Automatization {
  public:
    std::string name() const override { return "Trivial"; }
    ProcessPtr search(const BitString&, std::uint64_t, CoinContext) const override;
};

// ---------------------------------------------------------------------------

enum class ProofVerdict { Proof, NotProof, Borderline };

struct IsProofResult {
    ProofVerdict verdict = ProofVerdict::Borderline;
    stats::RateEstimate rate;
};

/// Estimates Pr[Pi(x,w,d) accepts]; Proof if the lower confidence limit is
/// >= 1/2, NotProof if the upper limit is <= 1/4.
IsProofResult is_proof(const HeuristicProofSystem& system, const BitString& x,
                       const BitString& w, std::uint64_t d, std::uint64_t trials, Seed seed);

struct CompletenessResult {
    bool complete = false;
    BitString witness;
};

/// Searches all witnesses up to length bound for one with acceptance lower
/// confidence limit >= 1/2. Throws EnumerationTooLarge past 2^20 candidates.
CompletenessResult check_completeness(const HeuristicProofSystem& system, const BitString& x,
                                      std::uint64_t d, std::size_t witness_bound,
                                      std::uint64_t trials, Seed seed);

struct SoundnessResult {
    bool sound = false;          // offending mass < 1/d
    Rational offending_mass = 0;  // exact D_n-mass of inputs with some proof-like witness
};

/// For every support point, decides whether some witness up to the bound
/// has estimated acceptance rate > 1/4, and sums the exact offender mass.
SoundnessResult check_soundness(const HeuristicProofSystem& system,
                                const DistributionalProblem& problem, std::size_t n,
                                std::uint64_t d, std::size_t witness_bound,
                                std::uint64_t trials, Seed seed);

struct VoteConfig {
    std::uint64_t copies = 1000;
    std::uint64_t votes = 10000;
    std::uint64_t threshold = 4000;
};

/// The composite automatizer built from (Pi, A): parallel proof-search
/// copies, a votes-round of the verifier on every emitted witness, and the
/// problem's semidecision procedure as one more parallel branch.
ProcessPtr a_pi_process(const HeuristicProofSystem& system, const Automatization& automatization,
                        const DistributionalProblem& problem, const BitString& x,
                        std::uint64_t d, const VoteConfig& config, CoinContext ctx);

ProcessFactory a_pi_factory(const HeuristicProofSystem& system,
                            const Automatization& automatization,
                            const DistributionalProblem& problem, const BitString& x,
                            std::uint64_t d, const VoteConfig& config);

/// Pr[Bin(votes, q) >= threshold]: the probability one witness with
/// acceptance rate q passes the vote.
double vote_pass_probability_exact(const Rational& q, const VoteConfig& config);

struct ShortestProofResult {
    bool found = false;
    std::size_t size = 0;
};

/// Minimal witness length up to the bound with a Proof verdict.
ShortestProofResult shortest_proof_size(const HeuristicProofSystem& system, const BitString& x,
                                        std::uint64_t d, std::size_t witness_bound,
                                        std::uint64_t trials, Seed seed);

struct PsSimulationCheck {
    bool ok = true;
    std::vector<std::string> failures;  // cells where sizes are missing or the bound fails
};

/// Cellwise shortest-proof comparison: size_1(x, d) <=
/// p(d |x| max_{d' <= q(|x| d)} size_2(x, d')).
PsSimulationCheck check_ps_simulation(const HeuristicProofSystem& sys1,
                                      const HeuristicProofSystem& sys2, const Polynomial& p,
                                      const Polynomial& q, const std::vector<BitString>& xs,
                                      const std::vector<std::uint64_t>& ds,
                                      std::size_t witness_bound, std::uint64_t trials, Seed seed);

/// Cellwise shortest-proof bound: size(x, d) <= p(|x| d).
bool check_ps_poly_bounded(const HeuristicProofSystem& system, const std::vector<BitString>& xs,
                           const std::vector<std::uint64_t>& ds, const Polynomial& p,
                           std::size_t witness_bound, std::uint64_t trials, Seed seed);

}  // namespace hra

#include "hra/proofsys.hpp"

#include "hra/stats.hpp"

#include <cmath>

namespace hra {

std::uint64_t TruthTableSystem::run_cost(const BitString& x, const BitString& w,
                                         std::uint64_t /*d*/) const {
    const std::uint64_t literals =
        std::max<std::uint64_t>(x.size() / TautProblem::kLiteralWidth, 1);
    return (1ULL << problem_.vars()) * literals + w.size() + 1;
}

bool TruthTableSystem::execute(const BitString& x, const BitString& /*w*/, std::uint64_t,
                               CoinSource&) const {
    return problem_.is_member(x);
}

namespace {

class EmitWitnessProcess final : public SteppableProcess {
  public:
    explicit EmitWitnessProcess(std::string witness, std::uint64_t ticks = 2)
        : witness_(std::move(witness)), remaining_(ticks) {}

  protected:
    void do_step() override {
        if (--remaining_ == 0) emit_output1(witness_);
    }

  private:
    std::string witness_;
    std::uint64_t remaining_;
};

/// One proof-search copy of the composite: search, then the votes-round on
/// the emitted witness. Output1 iff the vote passes.
class CopyVoteProcess final : public SteppableProcess {
  public:
    CopyVoteProcess(const HeuristicProofSystem& system, const Automatization& automatization,
                    const BitString& x, std::uint64_t d, const VoteConfig& config,
                    CoinContext ctx)
        : system_(system), x_(x), d_(d), config_(config),
          verifier_coins_(ctx.child(1).stream()) {
        search_ = automatization.search(x_, d_, ctx.child(0));
    }

  protected:
    void do_step() override {
        if (search_) {
            search_->step();
            if (search_->output1()) {
                witness_ = BitString(search_->payload().value_or(""));
                exec_cost_ = system_.run_cost(x_, witness_, d_);
                exec_ticks_left_ = exec_cost_;
                search_.reset();
            } else if (!search_->running()) {
                diverge();
            }
            return;
        }
        // Voting phase: each verifier execution costs exec_cost_ ticks and
        // resolves at its final tick.
        if (--exec_ticks_left_ > 0) return;
        if (system_.execute(x_, witness_, d_, *verifier_coins_)) ++accepts_;
        if (++executed_ == config_.votes) {
            if (accepts_ >= config_.threshold)
                emit_output1(witness_.str());
            else
                diverge();
            return;
        }
        exec_ticks_left_ = exec_cost_;
    }

  private:
    const HeuristicProofSystem& system_;
    BitString x_;
    std::uint64_t d_;
    VoteConfig config_;
    std::unique_ptr<CoinSource> verifier_coins_;
    ProcessPtr search_;
    BitString witness_;
    std::uint64_t exec_cost_ = 1;
    std::uint64_t exec_ticks_left_ = 0;
    std::uint64_t executed_ = 0;
    std::uint64_t accepts_ = 0;
};

std::vector<BitString> enumerate_witnesses(std::size_t bound) {
    std::uint64_t total = 0;
    for (std::size_t len = 0; len <= bound; ++len) {
        total += 1ULL << len;
        if (total > (1ULL << 20))
            throw EnumerationTooLarge("witness enumeration exceeds 2^20 candidates");
    }
    std::vector<BitString> witnesses;
    witnesses.reserve(total);
    for (std::size_t len = 0; len <= bound; ++len)
        for (std::uint64_t v = 0; v < (1ULL << len); ++v)
            witnesses.push_back(BitString::from_index(v, len));
    return witnesses;
}

}  // namespace

ProcessPtr TrivialAutomatization::search(const BitString&, std::uint64_t, CoinContext) const {
    return std::make_unique<EmitWitnessProcess>("");
}

IsProofResult is_proof(const HeuristicProofSystem& system, const BitString& x,
                       const BitString& w, std::uint64_t d, std::uint64_t trials, Seed seed) {
    std::uint64_t accepts = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto coins = CoinContext::from_seed(derive_seed(seed, i)).stream();
        if (system.execute(x, w, d, *coins)) ++accepts;
    }
    IsProofResult result;
    result.rate = stats::wilson_interval(accepts, trials);
    if (result.rate.lo >= 0.5)
        result.verdict = ProofVerdict::Proof;
    else if (result.rate.hi <= 0.25)
        result.verdict = ProofVerdict::NotProof;
    else
        result.verdict = ProofVerdict::Borderline;
    return result;
}

CompletenessResult check_completeness(const HeuristicProofSystem& system, const BitString& x,
                                      std::uint64_t d, std::size_t witness_bound,
                                      std::uint64_t trials, Seed seed) {
    std::uint64_t idx = 0;
    for (const BitString& w : enumerate_witnesses(witness_bound)) {
        IsProofResult r = is_proof(system, x, w, d, trials, derive_seed(seed, idx++));
        if (r.verdict == ProofVerdict::Proof) return {true, w};
    }
    return {false, BitString()};
}

SoundnessResult check_soundness(const HeuristicProofSystem& system,
                                const DistributionalProblem& problem, std::size_t n,
                                std::uint64_t d, std::size_t witness_bound,
                                std::uint64_t trials, Seed seed) {
    const auto witnesses = enumerate_witnesses(witness_bound);
    SoundnessResult result;
    std::uint64_t idx = 0;
    for (const auto& entry : problem.exact_support(n)) {
        bool offender = false;
        for (const BitString& w : witnesses) {
            IsProofResult r = is_proof(system, entry.x, w, d, trials, derive_seed(seed, idx++));
            if (r.rate.estimate > 0.25) {
                offender = true;
                break;
            }
        }
        if (offender) result.offending_mass += entry.prob;
    }
    result.sound = result.offending_mass < Rational(1, d);
    return result;
}

ProcessPtr a_pi_process(const HeuristicProofSystem& system, const Automatization& automatization,
                        const DistributionalProblem& problem, const BitString& x,
                        std::uint64_t d, const VoteConfig& config, CoinContext ctx) {
    std::vector<ProcessPtr> children;
    std::vector<std::string> ids;
    children.reserve(config.copies + 1);
    for (std::uint64_t i = 0; i < config.copies; ++i) {
        children.push_back(std::make_unique<CopyVoteProcess>(system, automatization, x, d,
                                                             config, ctx.child(i)));
        ids.push_back("copy" + std::to_string(i));
    }
    children.push_back(problem.semidecider(x));
    ids.push_back("semidecider");
    return std::make_unique<ParallelComposite>(std::move(children), stop_when_any_output1(),
                                               std::move(ids));
}

ProcessFactory a_pi_factory(const HeuristicProofSystem& system,
                            const Automatization& automatization,
                            const DistributionalProblem& problem, const BitString& x,
                            std::uint64_t d, const VoteConfig& config) {
    return [&system, &automatization, &problem, x, d, config](CoinContext ctx) {
        return a_pi_process(system, automatization, problem, x, d, config, std::move(ctx));
    };
}

double vote_pass_probability_exact(const Rational& q, const VoteConfig& config) {
    return stats::binom_tail_ge(config.votes, q, Rational(config.threshold));
}

ShortestProofResult shortest_proof_size(const HeuristicProofSystem& system, const BitString& x,
                                        std::uint64_t d, std::size_t witness_bound,
                                        std::uint64_t trials, Seed seed) {
    std::uint64_t idx = 0;
    for (const BitString& w : enumerate_witnesses(witness_bound)) {
        IsProofResult r = is_proof(system, x, w, d, trials, derive_seed(seed, idx++));
        if (r.verdict == ProofVerdict::Proof) return {true, w.size()};
    }
    return {false, 0};
}

PsSimulationCheck check_ps_simulation(const HeuristicProofSystem& sys1,
                                      const HeuristicProofSystem& sys2, const Polynomial& p,
                                      const Polynomial& q, const std::vector<BitString>& xs,
                                      const std::vector<std::uint64_t>& ds,
                                      std::size_t witness_bound, std::uint64_t trials,
                                      Seed seed) {
    PsSimulationCheck check;
    std::uint64_t cell = 0;
    for (const auto& x : xs) {
        for (std::uint64_t d : ds) {
            const Seed cell_seed = derive_seed(seed, cell++);
            const std::string tag = x.str() + ",d=" + std::to_string(d);
            ShortestProofResult s1 =
                shortest_proof_size(sys1, x, d, witness_bound, trials, derive_seed(cell_seed, 1));
            const double limit =
                q(static_cast<double>(x.size()) * static_cast<double>(d));
            double worst = -1;
            for (std::uint64_t dp = 1; dp <= static_cast<std::uint64_t>(std::max(1.0, limit));
                 ++dp) {
                ShortestProofResult s2 = shortest_proof_size(sys2, x, dp, witness_bound, trials,
                                                             derive_seed(cell_seed, 100 + dp));
                if (s2.found) worst = std::max(worst, static_cast<double>(s2.size));
            }
            if (!s1.found || worst < 0) {
                check.ok = false;
                check.failures.push_back(tag + " (no proof found)");
                continue;
            }
            const double bound =
                p(static_cast<double>(d) * static_cast<double>(x.size()) * worst);
            if (static_cast<double>(s1.size) > bound) {
                check.ok = false;
                check.failures.push_back(tag);
            }
        }
    }
    return check;
}

bool check_ps_poly_bounded(const HeuristicProofSystem& system, const std::vector<BitString>& xs,
                           const std::vector<std::uint64_t>& ds, const Polynomial& p,
                           std::size_t witness_bound, std::uint64_t trials, Seed seed) {
    std::uint64_t cell = 0;
    for (const auto& x : xs) {
        for (std::uint64_t d : ds) {
            ShortestProofResult s =
                shortest_proof_size(system, x, d, witness_bound, trials, derive_seed(seed, cell++));
            if (!s.found) return false;
            if (static_cast<double>(s.size) >
                p(static_cast<double>(x.size()) * static_cast<double>(d)))
                return false;
        }
    }
    return true;
}

}  // namespace hra

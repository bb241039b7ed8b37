#pragma once

#include "hra/problems.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace hra {

/// Candidate automatizers with analytically known error profiles; the
/// ground truth for certification and universal-automatizer experiments.
struct CandidateSpec {
    enum class Kind { HonestDecider, SlowHonest, AlwaysOne, CoinLiar, PlantedLiar };

    Kind kind = Kind::HonestDecider;
    unsigned slow_degree = 2;     // SlowHonest: halting step Theta(|x|^g) on members
    Rational error_rate = 0;      // CoinLiar epsilon / PlantedLiar eps_B
    std::function<bool(const BitString&)> bad_set;  // PlantedLiar; default: first bit 1

    std::string label() const;

    /// Names like "HonestDecider", "SlowHonest:2", "CoinLiar:1/8",
    /// "PlantedLiar:1/2" (CLI pool entries).
    static CandidateSpec parse(const std::string& text);

    bool in_bad_set(const BitString& x) const;
};

/// Instantiates one run of the candidate on (x, d). The returned process
/// realizes the declared behavior exactly; fresh coins per run.
ProcessPtr make_candidate(const CandidateSpec& spec, const DistributionalProblem& problem,
                          const BitString& x, std::uint64_t d, CoinContext ctx);

/// Convenience factory closure for halting-distribution tooling.
ProcessFactory candidate_factory(const CandidateSpec& spec, const DistributionalProblem& problem,
                                 const BitString& x, std::uint64_t d);

/// Exact Pr[candidate outputs 1 on (x, d)] for a non-member x.
/// Throws MemberInput if x is a member.
Rational known_error_profile(const CandidateSpec& spec, const DistributionalProblem& problem,
                             const BitString& x, std::uint64_t d);

struct CorrectnessVerdict {
    bool correct = false;
    Rational witness_mass = 0;  // D_n-mass of {x : profile(x) > eps}
    Rational threshold = 0;     // 1 / (lambda * d)
};

/// Checks condition 3 of correctness exactly via the support oracle:
/// D_n{profile > eps} < 1/(lambda d).
CorrectnessVerdict correctness_verdict(const CandidateSpec& spec,
                                       const DistributionalProblem& problem, std::size_t n,
                                       std::uint64_t d, const Rational& lambda,
                                       const Rational& eps);

}  // namespace hra

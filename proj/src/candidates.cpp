#include "hra/candidates.hpp"

#include <cmath>

namespace hra {

namespace {

/// Draws one coin per step; outputs 1 at the deciding step with probability
/// exactly eps, otherwise diverges. Dyadic eps decides after exactly
/// log2(denominator) bits; general eps bisects and decides almost surely.
class CoinTailProcess final : public SteppableProcess {
  public:
    CoinTailProcess(Rational eps, CoinContext ctx)
        : eps_(std::move(eps)), coins_(ctx.stream()) {
        dyadic_ = is_dyadic(eps_, &dyadic_bits_);
        if (dyadic_) {
            target_ = boost::multiprecision::numerator(eps_).convert_to<std::uint64_t>();
        }
    }

  protected:
    void do_step() override {
        if (eps_ <= 0) {
            diverge();
            return;
        }
        if (eps_ >= 1) {
            emit_output1();
            return;
        }
        const bool bit = coins_->next_bit();
        if (dyadic_) {
            value_ = (value_ << 1) | (bit ? 1u : 0u);
            if (++drawn_ == dyadic_bits_) {
                if (value_ < target_)
                    emit_output1();
                else
                    diverge();
            }
            return;
        }
        Rational mid = (lo_ + hi_) / 2;
        if (bit) {
            lo_ = mid;
            if (lo_ >= eps_) diverge();
        } else {
            hi_ = mid;
            if (hi_ <= eps_) emit_output1();
        }
    }

  private:
    Rational eps_;
    std::unique_ptr<CoinSource> coins_;
    bool dyadic_ = false;
    unsigned dyadic_bits_ = 0;
    unsigned drawn_ = 0;
    std::uint64_t value_ = 0;
    std::uint64_t target_ = 0;
    Rational lo_ = 0, hi_ = 1;
};

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

std::string CandidateSpec::label() const {
    switch (kind) {
        case Kind::HonestDecider: return "HonestDecider";
        case Kind::SlowHonest: return "SlowHonest:" + std::to_string(slow_degree);
        case Kind::AlwaysOne: return "AlwaysOne";
        case Kind::CoinLiar: return "CoinLiar:" + rational_string(error_rate);
        case Kind::PlantedLiar: return "PlantedLiar:" + rational_string(error_rate);
    }
    return "?";
}

bool CandidateSpec::in_bad_set(const BitString& x) const {
    if (bad_set) return bad_set(x);
    return !x.empty() && x.bit(0);
}

CandidateSpec CandidateSpec::parse(const std::string& text) {
    CandidateSpec spec;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "HonestDecider") {
        spec.kind = Kind::HonestDecider;
    } else if (head == "SlowHonest") {
        spec.kind = Kind::SlowHonest;
        if (!arg.empty()) spec.slow_degree = static_cast<unsigned>(std::stoul(arg));
    } else if (head == "AlwaysOne") {
        spec.kind = Kind::AlwaysOne;
    } else if (head == "CoinLiar") {
        spec.kind = Kind::CoinLiar;
        if (arg.empty()) throw ConfigError("CoinLiar needs an error rate, e.g. CoinLiar:1/8");
        spec.error_rate = parse_rational(arg);
    } else if (head == "PlantedLiar") {
        spec.kind = Kind::PlantedLiar;
        if (arg.empty()) throw ConfigError("PlantedLiar needs an error rate");
        spec.error_rate = parse_rational(arg);
    } else {
        throw ConfigError("unknown candidate: " + text);
    }
    return spec;
}

ProcessPtr make_candidate(const CandidateSpec& spec, const DistributionalProblem& problem,
                          const BitString& x, std::uint64_t /*d*/, CoinContext ctx) {
    const bool member = problem.is_member(x);
    switch (spec.kind) {
        case CandidateSpec::Kind::HonestDecider:
            return problem.semidecider(x);
        case CandidateSpec::Kind::SlowHonest: {
            const std::uint64_t delay = ipow(std::max<std::uint64_t>(x.size(), 1),
                                             spec.slow_degree);
            return std::make_unique<DelayedVerdictProcess>(delay + x.size() + 1, member);
        }
        case CandidateSpec::Kind::AlwaysOne:
            return std::make_unique<DelayedVerdictProcess>(1, true);
        case CandidateSpec::Kind::CoinLiar:
            if (member) return problem.semidecider(x);
            return std::make_unique<CoinTailProcess>(spec.error_rate, ctx);
        case CandidateSpec::Kind::PlantedLiar:
            if (member) return problem.semidecider(x);
            if (spec.in_bad_set(x))
                return std::make_unique<CoinTailProcess>(spec.error_rate, ctx);
            return std::make_unique<DelayedVerdictProcess>(1, false);
    }
    throw DomainError("make_candidate: bad kind");
}

ProcessFactory candidate_factory(const CandidateSpec& spec, const DistributionalProblem& problem,
                                 const BitString& x, std::uint64_t d) {
    return [&spec, &problem, x, d](CoinContext ctx) {
        return make_candidate(spec, problem, x, d, std::move(ctx));
    };
}

Rational known_error_profile(const CandidateSpec& spec, const DistributionalProblem& problem,
                             const BitString& x, std::uint64_t /*d*/) {
    if (problem.is_member(x))
        throw MemberInput("known_error_profile: x is a member of L");
    switch (spec.kind) {
        case CandidateSpec::Kind::HonestDecider:
        case CandidateSpec::Kind::SlowHonest:
            return 0;
        case CandidateSpec::Kind::AlwaysOne:
            return 1;
        case CandidateSpec::Kind::CoinLiar:
            return spec.error_rate;
        case CandidateSpec::Kind::PlantedLiar:
            return spec.in_bad_set(x) ? spec.error_rate : Rational(0);
    }
    throw DomainError("known_error_profile: bad kind");
}

CorrectnessVerdict correctness_verdict(const CandidateSpec& spec,
                                       const DistributionalProblem& problem, std::size_t n,
                                       std::uint64_t d, const Rational& lambda,
                                       const Rational& eps) {
    CorrectnessVerdict verdict;
    verdict.threshold = Rational(1) / (lambda * Rational(d));
    verdict.witness_mass = problem.exact_mass(n, [&](const BitString& x) {
        return known_error_profile(spec, problem, x, d) > eps;
    });
    verdict.correct = verdict.witness_mass < verdict.threshold;
    return verdict;
}

}  // namespace hra

#include "hra/amplify.hpp"

#include "hra/stats.hpp"
#include "hra/universal.hpp"

#include <cmath>

namespace hra {

ProcessPtr amplify(const CandidateSpec& spec, const DistributionalProblem& problem,
                   const BitString& x, std::uint64_t d, const AmplifierConfig& config,
                   CoinContext ctx) {
    if (config.m < 1) throw DomainError("amplify: m must be >= 1");
    std::vector<ProcessPtr> copies;
    copies.reserve(config.m);
    for (std::uint64_t i = 0; i < config.m; ++i)
        copies.push_back(
            make_candidate(spec, problem, x, AmplifierConfig::inner_d(d), ctx.child(i)));
    return std::make_unique<ParallelComposite>(
        std::move(copies), stop_when_output1_at_least(config.stop_threshold()));
}

ProcessFactory amplified_factory(const CandidateSpec& spec, const DistributionalProblem& problem,
                                 const BitString& x, std::uint64_t d,
                                 const AmplifierConfig& config) {
    return [&spec, &problem, x, d, config](CoinContext ctx) {
        return amplify(spec, problem, x, d, config, std::move(ctx));
    };
}

Rational amplified_error_exact(const Rational& eps_x, std::uint64_t m) {
    if (eps_x < 0 || eps_x > 1) throw DomainError("amplified_error_exact: eps outside [0,1]");
    const AmplifierConfig config{m};
    return stats::binom_tail_ge_exact(m, eps_x, Rational(config.stop_threshold()));
}

std::uint64_t choose_m(std::uint64_t d, std::uint64_t n) {
    if (d < 1) throw DomainError("choose_m: d must be >= 1");
    const std::uint64_t ls = log_star(n);
    const double arg = 18.0 * static_cast<double>(d) * static_cast<double>(ls * ls);
    const double m = 48.0 * std::log(arg);
    if (!(m >= 1.0)) return 1;
    return static_cast<std::uint64_t>(std::ceil(m));
}

}  // namespace hra

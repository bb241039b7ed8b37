#pragma once

#include "hra/candidates.hpp"
#include "hra/process.hpp"

#include <cstdint>

namespace hra {

/// m parallel copies of W(x, 4d); the wrapper stops as soon as the 3/8
/// fraction (threshold ceil(3m/8), minimum 1) of copies has stopped.
struct AmplifierConfig {
    std::uint64_t m = 1;

    std::uint64_t stop_threshold() const { return (3 * m + 7) / 8 == 0 ? 1 : (3 * m + 7) / 8; }
    static std::uint64_t inner_d(std::uint64_t d) { return 4 * d; }
};

/// Builds the amplified run S(x, d): a scheduler composite whose Output1
/// fires at the round where the threshold count of copies has halted.
/// Copies draw independent derived coins.
ProcessPtr amplify(const CandidateSpec& spec, const DistributionalProblem& problem,
                   const BitString& x, std::uint64_t d, const AmplifierConfig& config,
                   CoinContext ctx);

ProcessFactory amplified_factory(const CandidateSpec& spec, const DistributionalProblem& problem,
                                 const BitString& x, std::uint64_t d,
                                 const AmplifierConfig& config);

/// Exact per-input error of the amplified run: Pr[Bin(m, eps_x) >= ceil(3m/8)],
/// where eps_x = Pr[W(x, 4d) outputs 1].
Rational amplified_error_exact(const Rational& eps_x, std::uint64_t m);

/// Copy-count rule m = ceil(48 ln(18 d log*^2 n)), minimum 1.
std::uint64_t choose_m(std::uint64_t d, std::uint64_t n);

}  // namespace hra

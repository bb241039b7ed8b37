#include "hra/problems.hpp"

#include <ostream>
#include <random>

namespace hra {

Rational DistributionalProblem::exact_mass(
    std::size_t n, const std::function<bool(const BitString&)>& predicate) const {
    if (!has_exact_support(n))
        throw NoExactSupport(name() + ": no exact support at length " + std::to_string(n));
    Rational mass = 0;
    for (const auto& entry : exact_support(n))
        if (predicate(entry.x)) mass += entry.prob;
    return mass;
}

void DistributionalProblem::export_support_csv(std::size_t n, std::ostream& out) const {
    out << "bitstring,probability\n";
    for (const auto& entry : exact_support(n))
        out << entry.x.str() << "," << rational_string(entry.prob) << "\n";
}

SemidecideResult semidecide(const DistributionalProblem& problem, const BitString& x,
                            std::uint64_t budget) {
    ProcessPtr proc = problem.semidecider(x);
    return run_until(*proc, budget).output1 ? SemidecideResult::Accepted
                                            : SemidecideResult::Undecided;
}

namespace {

class ConditionWrapper final : public SteppableProcess {
  public:
    ConditionWrapper(ProcessPtr inner, ProcessPtr semi)
        : inner_(std::move(inner)), semi_(std::move(semi)) {}

  protected:
    void do_step() override {
        // Alternate: odd ticks step the wrapped process, even ticks the
        // semidecider. A non-Output1 halt of the inner process is absorbed
        // as divergence of that branch only.
        if (turn_inner_) {
            if (inner_->running()) inner_->step();
            if (inner_->output1()) {
                emit_output1();
                return;
            }
        } else {
            if (semi_->running()) semi_->step();
            if (semi_->output1()) {
                emit_output1();
                return;
            }
        }
        turn_inner_ = !turn_inner_;
        if (!inner_->running() && !semi_->running()) diverge();
    }

  private:
    ProcessPtr inner_;
    ProcessPtr semi_;
    bool turn_inner_ = true;
};

}  // namespace

ProcessPtr enforce_conditions(ProcessPtr proc, const DistributionalProblem& problem,
                              const BitString& x) {
    return std::make_unique<ConditionWrapper>(std::move(proc), problem.semidecider(x));
}

// ---------------------------------------------------------------------------
// PARITY

BitString ParityProblem::sample(std::size_t n, Seed seed) const {
    if (n < 1) throw UnsupportedLength("PARITY: no odd-parity string of length 0");
    std::mt19937_64 rng(seed);
    std::string bits(n, '0');
    bool parity_odd = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (rng() & 1) {
            bits[i] = '1';
            parity_odd = !parity_odd;
        }
    }
    if (!parity_odd) bits[n - 1] = '1';
    return BitString(std::move(bits));
}

ProcessPtr ParityProblem::semidecider(const BitString& x) const {
    // One tick per scanned bit, then the verdict tick.
    return std::make_unique<DelayedVerdictProcess>(x.size() + 1, x.even_parity());
}

std::vector<SupportEntry> ParityProblem::exact_support(std::size_t n) const {
    if (!has_exact_support(n))
        throw NoExactSupport("PARITY: exact support limited to 1 <= n <= 20");
    std::vector<SupportEntry> support;
    const std::uint64_t count = 1ULL << (n - 1);
    support.reserve(count);
    const Rational prob(BigInt(1), BigInt(count));
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
        BitString x = BitString::from_index(v, n);
        if (!x.even_parity()) support.push_back({std::move(x), prob});
    }
    return support;
}

// ---------------------------------------------------------------------------
// TAUT-v

TautProblem::TautProblem(unsigned vars, std::uint64_t retry_cap)
    : vars_(vars), retry_cap_(retry_cap) {
    if (vars_ < 1 || vars_ > 3) throw DomainError("TAUT-v: v must be in {1,2,3}");
}

bool TautProblem::supports_length(std::size_t n) const {
    return n >= kLiteralWidth && n % kLiteralWidth == 0;
}

bool TautProblem::evaluate(const BitString& x, unsigned assignment) const {
    // Disjunction of literals; each 3-bit code is (var high bit, var low
    // bit, negation), variable index taken mod v.
    for (std::size_t i = 0; i + kLiteralWidth <= x.size(); i += kLiteralWidth) {
        const unsigned var = ((x.bit(i) ? 2u : 0u) + (x.bit(i + 1) ? 1u : 0u)) % vars_;
        const bool negated = x.bit(i + 2);
        const bool value = (assignment >> var) & 1u;
        if (value != negated) return true;
    }
    return false;
}

bool TautProblem::is_member(const BitString& x) const {
    if (!supports_length(x.size())) return false;
    for (unsigned a = 0; a < (1u << vars_); ++a)
        if (!evaluate(x, a)) return false;
    return true;
}

BitString TautProblem::sample(std::size_t n, Seed seed) const {
    if (!supports_length(n))
        throw UnsupportedLength(name() + ": length must be a positive multiple of 3");
    std::mt19937_64 rng(seed);
    for (std::uint64_t attempt = 0; attempt < retry_cap_; ++attempt) {
        std::string bits(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1) bits[i] = '1';
        BitString x(std::move(bits));
        if (!is_member(x)) return x;
    }
    throw UnsupportedLength(name() + ": rejection sampler exceeded retry cap");
}

ProcessPtr TautProblem::semidecider(const BitString& x) const {
    // Cost model: one tick per (assignment, literal) evaluation plus one
    // verdict tick. Non-encodable lengths are non-members.
    const std::uint64_t literals = x.size() / kLiteralWidth;
    const std::uint64_t cost = (1ULL << vars_) * std::max<std::uint64_t>(literals, 1) + 1;
    return std::make_unique<DelayedVerdictProcess>(cost, is_member(x));
}

bool TautProblem::has_exact_support(std::size_t n) const {
    return supports_length(n) && n <= 18;
}

std::vector<SupportEntry> TautProblem::exact_support(std::size_t n) const {
    if (!has_exact_support(n))
        throw NoExactSupport(name() + ": exact support by exhaustion only for n <= 18");
    std::vector<BitString> nonmembers;
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
        BitString x = BitString::from_index(v, n);
        if (!is_member(x)) nonmembers.push_back(std::move(x));
    }
    std::vector<SupportEntry> support;
    support.reserve(nonmembers.size());
    const Rational prob(BigInt(1), BigInt(nonmembers.size()));
    for (auto& x : nonmembers) support.push_back({std::move(x), prob});
    return support;
}

std::vector<BitString> TautProblem::tautologies(std::size_t n) const {
    if (!supports_length(n) || n > 18)
        throw EnumerationTooLarge(name() + ": tautology enumeration only for n <= 18");
    std::vector<BitString> members;
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
        BitString x = BitString::from_index(v, n);
        if (is_member(x)) members.push_back(std::move(x));
    }
    return members;
}

std::unique_ptr<DistributionalProblem> make_problem(const std::string& spec) {
    if (spec == "PARITY") return std::make_unique<ParityProblem>();
    if (spec.rfind("TAUT-", 0) == 0) {
        const unsigned v = static_cast<unsigned>(std::stoul(spec.substr(5)));
        return std::make_unique<TautProblem>(v);
    }
    throw ConfigError("unknown problem: " + spec);
}

}  // namespace hra

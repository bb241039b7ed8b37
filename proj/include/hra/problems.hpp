#pragma once

#include "hra/bitstring.hpp"
#include "hra/errors.hpp"
#include "hra/process.hpp"
#include "hra/rational.hpp"
#include "hra/seed.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hra {

struct SupportEntry {
    BitString x;
    Rational prob;
};

/// A language semidecider plus per-length samplable distributions
/// concentrated on non-members. Immutable after construction; all
/// randomness flows through explicit seeds.
class DistributionalProblem {
  public:
    virtual ~DistributionalProblem() = default;

    virtual std::string name() const = 0;
    virtual bool supports_length(std::size_t n) const = 0;

    /// Exact membership oracle (test and verification support).
    virtual bool is_member(const BitString& x) const = 0;

    /// Draws a length-n non-member; deterministic in (n, seed).
    virtual BitString sample(std::size_t n, Seed seed) const = 0;

    /// Step-bounded membership process: Output1 exactly on members, at a
    /// finite step count; diverges on non-members.
    virtual ProcessPtr semidecider(const BitString& x) const = 0;

    virtual bool has_exact_support(std::size_t n) const = 0;
    virtual std::vector<SupportEntry> exact_support(std::size_t n) const = 0;

    /// Sum of support probabilities of strings satisfying the predicate.
    Rational exact_mass(std::size_t n,
                        const std::function<bool(const BitString&)>& predicate) const;

    /// CSV columns: bitstring, probability as "p/q".
    void export_support_csv(std::size_t n, std::ostream& out) const;
};

enum class SemidecideResult { Accepted, Undecided };

/// Budget-bounded view of the semidecider; monotone in budget.
SemidecideResult semidecide(const DistributionalProblem& problem, const BitString& x,
                            std::uint64_t budget);

/// Interleaves one step of proc with one step of the problem's semidecider
/// on x; Output1 when either outputs 1; non-Output1 halts of proc become
/// divergence. On members the wrapper halts within 2 * t_semidecide + O(1)
/// ticks regardless of proc.
ProcessPtr enforce_conditions(ProcessPtr proc, const DistributionalProblem& problem,
                              const BitString& x);

/// Runs a fixed number of ticks, then delivers the precomputed verdict
/// (Output1 or divergence). Models deterministic scans and truth-table
/// evaluations in the unit-step cost model.
class DelayedVerdictProcess final : public SteppableProcess {
  public:
    DelayedVerdictProcess(std::uint64_t ticks, bool accept)
        : remaining_(ticks), accept_(accept) {}

  protected:
    void do_step() override {
        if (remaining_ > 1) {
            --remaining_;
            return;
        }
        if (accept_)
            emit_output1();
        else
            diverge();
    }

  private:
    std::uint64_t remaining_;
    bool accept_;
};

/// L = even-parity strings; D_n uniform over the odd-parity strings.
class ParityProblem final : public DistributionalProblem {
  public:
    std::string name() const override { return "PARITY"; }
    bool supports_length(std::size_t n) const override { return n >= 1; }
    bool is_member(const BitString& x) const override { return x.even_parity(); }
    BitString sample(std::size_t n, Seed seed) const override;
    ProcessPtr semidecider(const BitString& x) const override;
    bool has_exact_support(std::size_t n) const override { return n >= 1 && n <= 20; }
    std::vector<SupportEntry> exact_support(std::size_t n) const override;
};

/// L = tautologies over v <= 3 variables in a fixed-width encoding: the
/// string is a disjunction of 3-bit literal codes (2 bits variable index
/// mod v, 1 bit negation). D_n = rejection-sampled uniform non-tautologies.
class TautProblem final : public DistributionalProblem {
  public:
    explicit TautProblem(unsigned vars, std::uint64_t retry_cap = 1'000'000);

    std::string name() const override { return "TAUT-" + std::to_string(vars_); }
    bool supports_length(std::size_t n) const override;
    bool is_member(const BitString& x) const override;
    BitString sample(std::size_t n, Seed seed) const override;
    ProcessPtr semidecider(const BitString& x) const override;
    bool has_exact_support(std::size_t n) const override;
    std::vector<SupportEntry> exact_support(std::size_t n) const override;

    unsigned vars() const { return vars_; }
    static constexpr std::size_t kLiteralWidth = 3;

    /// True iff the encoded formula holds under the given assignment
    /// (bit i = value of variable i).
    bool evaluate(const BitString& x, unsigned assignment) const;

    /// Members of length n (enumeration; test support).
    std::vector<BitString> tautologies(std::size_t n) const;

  private:
    unsigned vars_;
    std::uint64_t retry_cap_;
};

std::unique_ptr<DistributionalProblem> make_problem(const std::string& spec);

}  // namespace hra

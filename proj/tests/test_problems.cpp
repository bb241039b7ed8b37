#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hra/problems.hpp"
#include "hra/stats.hpp"

#include <map>
#include <set>
#include <sstream>

using namespace hra;

TEST_CASE("parity membership and sampling") {
    ParityProblem parity;
    CHECK(parity.is_member(BitString("0110")));
    CHECK(parity.is_member(BitString("")));
    CHECK_FALSE(parity.is_member(BitString("1000")));

    for (std::size_t n : {1, 4, 9}) {
        for (Seed s = 0; s < 200; ++s) {
            const BitString x = parity.sample(n, s);
            CHECK(x.size() == n);
            CHECK_FALSE(parity.is_member(x));
        }
    }
}

TEST_CASE("parity exact support: uniform over odd-parity strings") {
    ParityProblem parity;
    for (std::size_t n : {1, 5, 12}) {
        const auto support = parity.exact_support(n);
        CHECK(support.size() == (std::size_t(1) << (n - 1)));
        Rational total = 0;
        std::set<std::string> seen;
        for (const auto& e : support) {
            CHECK(e.x.size() == n);
            CHECK_FALSE(parity.is_member(e.x));
            CHECK(e.prob == Rational(BigInt(1), BigInt(1) << (n - 1)));
            total += e.prob;
            seen.insert(e.x.str());
        }
        CHECK(total == Rational(1));
        CHECK(seen.size() == support.size());
    }
}

TEST_CASE("sampler frequencies match the exact support") {
    ParityProblem parity;
    const std::size_t n = 4;
    std::map<std::string, std::uint64_t> counts;
    const std::uint64_t trials = 20000;
    for (std::uint64_t t = 0; t < trials; ++t) ++counts[parity.sample(n, derive_seed(3, t)).str()];
    for (const auto& e : parity.exact_support(n)) {
        const auto r = stats::wilson_interval(counts[e.x.str()], trials, 0.999);
        CHECK(r.contains(to_double(e.prob)));
    }
}

TEST_CASE("parity semidecider accepts members in linear time, diverges otherwise") {
    ParityProblem parity;
    const BitString member("0110");
    auto proc = parity.semidecider(member);
    const auto r = run_until(*proc, 100);
    CHECK(r.output1);
    CHECK(r.halt_step <= 2 * member.size() + 2);

    CHECK(semidecide(parity, member, 100) == SemidecideResult::Accepted);
    CHECK(semidecide(parity, BitString("1000"), 10000) == SemidecideResult::Undecided);
    // Monotone in budget.
    CHECK(semidecide(parity, member, 2) == SemidecideResult::Undecided);
}

TEST_CASE("semidecision wrapper restores the required behavior") {
    ParityProblem parity;
    const BitString member("0110");
    const BitString nonmember("1000");

    // Immediately diverging inner process: wrapper still accepts members.
    auto diverging = std::make_unique<DelayedVerdictProcess>(1, false);
    auto wrapped = enforce_conditions(std::move(diverging), parity, member);
    const auto r = run_until(*wrapped, 1000);
    CHECK(r.output1);
    CHECK(r.halt_step <= 2 * (member.size() + 1) + 2);

    // Inner halts with output 1: wrapper forwards it.
    auto accepting = std::make_unique<DelayedVerdictProcess>(1, true);
    auto wrapped2 = enforce_conditions(std::move(accepting), parity, nonmember);
    CHECK(run_until(*wrapped2, 10).output1);

    // Inner halt without output on a non-member becomes divergence.
    class HaltsQuietly final : public SteppableProcess {
      protected:
        void do_step() override { halt_no_output(); }
    };
    auto wrapped3 = enforce_conditions(std::make_unique<HaltsQuietly>(), parity, nonmember);
    CHECK_FALSE(run_until(*wrapped3, 10000).output1);
    CHECK(wrapped3->diverged());
}

TEST_CASE("tautology problem: encoding, membership, and enumeration") {
    TautProblem taut(2);
    CHECK(taut.name() == "TAUT-2");
    CHECK_FALSE(taut.supports_length(0));
    CHECK_FALSE(taut.supports_length(4));
    CHECK(taut.supports_length(6));

    // "x1 or not x1" in the 3-bit literal encoding: var bits then negation.
    // Find it by enumeration instead of assuming bit order.
    const auto tauts = taut.tautologies(6);
    CHECK_FALSE(tauts.empty());
    for (const auto& x : tauts) {
        CHECK(taut.is_member(x));
        for (unsigned a = 0; a < 4; ++a) CHECK(taut.evaluate(x, a));
    }
    // A single literal can never be a tautology.
    for (const auto& x : taut.tautologies(3)) CHECK(false);  // unreachable
    CHECK(taut.tautologies(3).empty());
}

TEST_CASE("tautology distribution avoids members and normalizes") {
    TautProblem taut(2);
    for (std::size_t n : {3, 6, 9}) {
        const auto support = taut.exact_support(n);
        Rational total = 0;
        for (const auto& e : support) {
            CHECK_FALSE(taut.is_member(e.x));
            total += e.prob;
        }
        CHECK(total == Rational(1));
        for (Seed s = 0; s < 100; ++s) CHECK_FALSE(taut.is_member(taut.sample(n, s)));
    }
}

TEST_CASE("tautology semidecider agrees with the membership oracle") {
    TautProblem taut(2);
    for (const auto& x : taut.tautologies(6)) CHECK(semidecide(taut, x, 10000) == SemidecideResult::Accepted);
    CHECK(semidecide(taut, taut.sample(6, 1), 10000) == SemidecideResult::Undecided);
}

TEST_CASE("support table exports as CSV with rational probabilities") {
    ParityProblem parity;
    std::ostringstream out;
    parity.export_support_csv(2, out);
    const std::string csv = out.str();
    CHECK(csv.find("bitstring,probability") != std::string::npos);
    CHECK(csv.find("01,1/2") != std::string::npos);
    CHECK(csv.find("10,1/2") != std::string::npos);
}

TEST_CASE("exact_mass sums the selected support points") {
    ParityProblem parity;
    // Mass of first-bit-1 strings among odd-parity length-4 strings: half.
    const Rational m = parity.exact_mass(4, [](const BitString& x) { return x.bit(0); });
    CHECK(m == Rational(1, 2));
    CHECK(parity.exact_mass(4, [](const BitString&) { return true; }) == Rational(1));
}

TEST_CASE("problem factory parses names") {
    CHECK(make_problem("PARITY")->name() == "PARITY");
    CHECK(make_problem("TAUT-3")->name() == "TAUT-3");
    CHECK_THROWS_AS(make_problem("NOPE"), ConfigError);
}

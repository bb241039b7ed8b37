#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hra/universal.hpp"

#include <sstream>

using namespace hra;

namespace {

const ParityProblem kParity;

UParams small_params(std::size_t n, std::uint64_t d) {
    // Desk-scale certification parameters that keep single runs cheap.
    return scaled_params(n, d, /*d_prime=*/8, /*f=*/Rational(9), /*k=*/40, /*l=*/80, /*m=*/8);
}

}  // namespace

TEST_CASE("iterated logarithm fixed points") {
    CHECK(log_star(1) == 0);
    CHECK(log_star(2) == 1);
    CHECK(log_star(4) == 2);
    CHECK(log_star(16) == 3);
    CHECK(log_star(65536) == 4);
    CHECK(log_star(8) == 3);
    CHECK_THROWS_AS(log_star(0), DomainError);
}

TEST_CASE("parameter formulas at the reference point") {
    const UParams p = u_params(65536, 1);
    CHECK(p.d_prime == 256);
    CHECK(p.f == Rational(272));
    CHECK(p.k == 17035);
    // l comes through a double logarithm; allow rounding slack of 1%.
    CHECK(p.l >= 124739259);
    CHECK(p.l <= 127259245);
    CHECK(p.m == 272);

    const UParams q = u_params(4, 1);
    CHECK(q.d_prime == 64);
    CHECK(q.f == Rational(68));

    CHECK_THROWS_AS(u_params(1, 1), DomainError);
    CHECK_THROWS_AS(u_params(16, 0), DomainError);
}

TEST_CASE("scaled parameter override keeps the declared values") {
    const UParams p = small_params(8, 2);
    CHECK(p.n == 8);
    CHECK(p.d == 2);
    CHECK(p.d_prime == 8);
    CHECK(p.f == Rational(9));
    CHECK(p.k == 40);
    CHECK(p.l == 80);
    const CertParams c = p.cert_params(17);
    CHECK(c.T == 17);
    CHECK(c.k == 40);
}

TEST_CASE("pool indices are contiguous and one-based") {
    const auto pool = make_pool({"AlwaysOne", "HonestDecider", "SlowHonest:2"});
    REQUIRE(pool.size() == 3);
    CHECK(pool[0].index == 1);
    CHECK(pool[2].index == 3);
    CHECK(pool[1].spec.label() == "HonestDecider");
}

TEST_CASE("members are accepted when an honest decider is in the pool") {
    const auto pool = make_pool({"AlwaysOne", "HonestDecider"});
    const BitString member("0110");  // |x| = 4 schedules 2 branches
    const UParams params = small_params(4, 1);
    for (Seed s = 0; s < 5; ++s) {
        const auto r = universal_run(pool, kParity, member, 1, params, 50000000, s);
        CAPTURE(s);
        CHECK(r.output1);
        CHECK(r.winner.has_value());
        CHECK(r.trace.child_ids.size() == 2);
    }
}

TEST_CASE("a pool of constant liars never accepts a non-member") {
    const auto pool = make_pool({"AlwaysOne", "AlwaysOne", "AlwaysOne"});
    const BitString nonmember("10000000");
    const UParams params = small_params(8, 1);
    for (Seed s = 0; s < 10; ++s) {
        const auto r = universal_run(pool, kParity, nonmember, 1, params, 2000000, s);
        CHECK_FALSE(r.output1);
        CHECK_FALSE(r.winner.has_value());
    }
}

TEST_CASE("the schedule admits only the first log* |x| pool entries") {
    const auto pool = make_pool(
        {"HonestDecider", "AlwaysOne", "AlwaysOne", "AlwaysOne", "AlwaysOne"});
    const UParams params = small_params(2, 1);
    // |x| = 2: log* = 1, a single branch runs.
    const auto r2 = universal_run(pool, kParity, BitString("01"), 1, params, 10000000, 1);
    CHECK(r2.trace.child_ids.size() == 1);
    // |x| = 8: log* = 3.
    const auto r8 =
        universal_run(pool, kParity, BitString("01100110"), 1, small_params(8, 1), 50000000, 1);
    CHECK(r8.trace.child_ids.size() == 3);
    // A short pool is never over-scheduled.
    const auto small_pool = make_pool({"HonestDecider"});
    const auto r1 =
        universal_run(small_pool, kParity, BitString("01100110"), 1, small_params(8, 1), 50000000, 1);
    CHECK(r1.trace.child_ids.size() == 1);
    CHECK_THROWS_AS(universal_run({}, kParity, BitString("01"), 1, params, 100, 1), DomainError);
}

TEST_CASE("runs stop at the first accepting certification") {
    const auto pool = make_pool({"HonestDecider", "SlowHonest:2"});
    const UParams params = small_params(4, 1);
    const auto r = universal_run(pool, kParity, BitString("0110"), 1, params, 50000000, 3);
    REQUIRE(r.output1);
    CHECK(*r.winner == 1);  // the fast honest branch certifies first
    CHECK(r.trace.stop_reason != "budget_exhausted");
    CHECK(r.ticks == r.trace.total_ticks);
}

TEST_CASE("identical seeds reproduce the full trace") {
    const auto pool = make_pool({"AlwaysOne", "HonestDecider"});
    const UParams params = small_params(4, 1);
    const auto a = universal_run(pool, kParity, BitString("0110"), 1, params, 50000000, 11);
    const auto b = universal_run(pool, kParity, BitString("0110"), 1, params, 50000000, 11);
    CHECK(a.output1 == b.output1);
    CHECK(a.ticks == b.ticks);
    CHECK(a.trace.to_json() == b.trace.to_json());
}

TEST_CASE("sampled correctness holds over non-members for an honest pool") {
    const auto pool = make_pool({"HonestDecider"});
    const UParams params = small_params(8, 1);
    const auto report = empirical_u_correctness(pool, kParity, 8, 1, params,
                                                /*samples=*/20, /*runs_per_sample=*/5,
                                                /*budget=*/2000000, /*seed=*/17);
    // Honest on non-members never halts, so U never outputs 1.
    for (double rate : report.per_sample_rates) CHECK(rate == 0.0);
    CHECK(report.bad_mass.estimate == 0.0);
    CHECK(report.correct);
}

TEST_CASE("time tables record per-cell quantile estimates") {
    ParityProblem parity;
    TimedProcessBuilder honest = [&](const BitString& x, std::uint64_t d, CoinContext ctx) {
        return make_candidate(CandidateSpec::parse("HonestDecider"), parity, x, d,
                              std::move(ctx));
    };
    const std::vector<BitString> xs = {BitString("0110"), BitString("01100110")};
    const auto table = measure_time_table(honest, xs, {1, 2}, /*trials=*/50,
                                          /*budget=*/10000, /*seed=*/5);
    REQUIRE(table.cells.size() == 4);
    const TimeCell* c4 = table.find(BitString("0110"), 1);
    REQUIRE(c4 != nullptr);
    const QuantileEstimate* med4 = c4->quantile(0.5);
    REQUIRE(med4 != nullptr);
    CHECK_FALSE(med4->infinite);
    CHECK(med4->estimate == 5);  // deterministic |x| + 1
    const TimeCell* c8 = table.find(BitString("01100110"), 1);
    CHECK(c8->quantile(0.5)->estimate == 9);
    CHECK(table.find(BitString("11"), 1) == nullptr);

    std::ostringstream csv;
    table.export_csv(csv);
    CHECK(csv.str().find("x,d,p,estimate,lo,hi") != std::string::npos);
    CHECK(csv.str().find("0110,1,0.5,5,") != std::string::npos);
}

TEST_CASE("time table censoring reports infinite quantiles") {
    ParityProblem parity;
    TimedProcessBuilder honest = [&](const BitString& x, std::uint64_t d, CoinContext ctx) {
        return make_candidate(CandidateSpec::parse("HonestDecider"), parity, x, d,
                              std::move(ctx));
    };
    // Honest never halts on a non-member.
    const auto table =
        measure_time_table(honest, {BitString("1000")}, {1}, 30, 5000, 7);
    CHECK(table.cells[0].quantile(0.5)->infinite);
}

TEST_CASE("simulation check: a table simulates itself under a linear witness") {
    ParityProblem parity;
    TimedProcessBuilder honest = [&](const BitString& x, std::uint64_t d, CoinContext ctx) {
        return make_candidate(CandidateSpec::parse("HonestDecider"), parity, x, d,
                              std::move(ctx));
    };
    const std::vector<BitString> xs = {BitString("0110"), BitString("011010")};
    const auto table = measure_time_table(honest, xs, {1, 2}, 50, 10000, 9);
    // t <= p(t |x| d) with p(z) = z and q(z) = z always holds.
    const Polynomial identity{{0.0, 1.0}};
    const auto self_sim = check_simulation(table, table, identity, identity);
    CHECK(self_sim.ok);
    CHECK(self_sim.violations.empty());

    // A constant witness polynomial below every entry must be rejected.
    const Polynomial tiny{{0.5}};
    const auto bad = check_simulation(table, table, tiny, identity);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.violations.empty());

    // q too small to admit any reference column: cells are skipped, not failed.
    const Polynomial zero_q{{0.0}};
    const auto skipped = check_simulation(table, table, identity, zero_q);
    CHECK(skipped.ok);
    CHECK(skipped.skipped.size() == table.cells.size());
}

TEST_CASE("polynomial-boundedness check over median entries") {
    ParityProblem parity;
    TimedProcessBuilder honest = [&](const BitString& x, std::uint64_t d, CoinContext ctx) {
        return make_candidate(CandidateSpec::parse("HonestDecider"), parity, x, d,
                              std::move(ctx));
    };
    const std::vector<BitString> xs = {BitString("0110"), BitString("01100110")};
    const auto table = measure_time_table(honest, xs, {1, 2}, 50, 10000, 13);
    // Halting time |x| + 1 <= d|x| + 1 cellwise.
    CHECK(check_poly_bounded(table, Polynomial{{1.0, 1.0}}));
    std::vector<std::string> violations;
    CHECK_FALSE(check_poly_bounded(table, Polynomial{{1.0}}, &violations));
    CHECK_FALSE(violations.empty());

    // Empty tables are vacuously bounded.
    CHECK(check_poly_bounded(TimeTable{}, Polynomial{{0.0}}));

    // The fitted envelope always covers the table it was fitted to.
    const Polynomial fitted = fit_poly_bound(table, 1);
    CHECK(check_poly_bounded(table, fitted));
}

TEST_CASE("slow honest medians separate from fast honest medians") {
    ParityProblem parity;
    auto builder_for = [&](const std::string& name) {
        return TimedProcessBuilder(
            [&parity, name](const BitString& x, std::uint64_t d, CoinContext ctx) {
                return make_candidate(CandidateSpec::parse(name), parity, x, d,
                                      std::move(ctx));
            });
    };
    const std::vector<BitString> xs = {BitString("0110"), BitString("01100110")};
    const auto fast = measure_time_table(builder_for("HonestDecider"), xs, {1}, 30, 100000, 21);
    const auto slow = measure_time_table(builder_for("SlowHonest:2"), xs, {1}, 30, 100000, 21);
    for (const auto& x : xs) {
        const auto* f = fast.find(x, 1)->quantile(0.5);
        const auto* s = slow.find(x, 1)->quantile(0.5);
        CHECK(f->estimate < s->estimate);
        CHECK(s->estimate >= x.size() * x.size());
    }
}

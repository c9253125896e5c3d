#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sublinear/error.hpp"
#include "sublinear/lln.hpp"

using namespace sublinear;

namespace {

BoundedLipschitzFn identity() { return {[](double x) { return x; }, 1.0}; }

const ReportRow& sup_row(const std::vector<ReportRow>& rows, std::size_t n) {
    for (const auto& r : rows) {
        if (r.n == n && r.policy_id == kSupPolicyId) return r;
    }
    throw std::runtime_error("no sup row");
}

}  // namespace

TEST(SimulatePath, ConstantWithoutNoise) {
    const auto p = simulate_path(MaximalDist(-1, 1), MeanPolicy::constant(0.0), NoiseSpec::none(), {5, 1, 0});
    EXPECT_EQ(p.values, std::vector<double>(5, 0.0));
}

TEST(SimulatePath, PeriodicWithoutNoise) {
    const auto p = simulate_path(MaximalDist(-1, 1), MeanPolicy::periodic({-1.0, 1.0}), NoiseSpec::none(),
                                 {4, 2, 9});
    EXPECT_EQ(p.reps, 2u);
    for (std::size_t r = 0; r < 2; ++r) {
        const auto row = p.row(r);
        EXPECT_EQ(std::vector<double>(row.begin(), row.end()), (std::vector<double>{-1, 1, -1, 1}));
    }
}

TEST(SimulatePath, TwoPointNoiseSupport) {
    const auto p = simulate_path(MaximalDist(-1, 1), MeanPolicy::constant(1.0), NoiseSpec::two_point(0.5),
                                 {1000, 3, 77});
    bool saw_lo = false, saw_hi = false;
    for (std::size_t r = 0; r < p.reps; ++r) {
        double sum = 0.0;
        for (double x : p.row(r)) {
            EXPECT_TRUE(x == 0.5 || x == 1.5) << x;
            saw_lo |= x == 0.5;
            saw_hi |= x == 1.5;
            sum += x;
        }
        EXPECT_GE(sum / 1000.0, 0.5);
        EXPECT_LE(sum / 1000.0, 1.5);
    }
    EXPECT_TRUE(saw_lo && saw_hi);
}

TEST(SimulatePath, UniformNoiseFollowsStatedConversion) {
    const double a = 0.25;
    const auto p = simulate_path(MaximalDist(0, 1), MeanPolicy::constant(0.5), NoiseSpec::uniform(a), {6, 2, 100});
    for (std::size_t r = 0; r < 2; ++r) {
        std::mt19937_64 gen(100 + r);
        for (std::size_t i = 0; i < 6; ++i) {
            const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            EXPECT_EQ(p.at(r, i), 0.5 + a * (2.0 * u - 1.0));
        }
    }
}

TEST(SimulatePath, RandomPolicyDrawsBeforeNoise) {
    const auto p = simulate_path(MaximalDist(-1, 1), MeanPolicy::random({-1.0, 0.0, 1.0}),
                                 NoiseSpec::two_point(0.1), {8, 1, 5});
    std::mt19937_64 gen(5);
    const double choices[] = {-1.0, 0.0, 1.0};
    for (std::size_t i = 0; i < 8; ++i) {
        const double mu = choices[gen() % 3];
        const double eps = (gen() >> 63) ? 0.1 : -0.1;
        EXPECT_EQ(p.at(0, i), mu + eps);
    }
}

TEST(SimulatePath, DeterministicAndReplicationSeeds) {
    const MaximalDist d(-1, 1);
    const auto pol = MeanPolicy::random({-1.0, 1.0});
    const auto noise = NoiseSpec::uniform(0.3);
    const auto a = simulate_path(d, pol, noise, {50, 4, 42});
    const auto b = simulate_path(d, pol, noise, {50, 4, 42});
    EXPECT_EQ(a.values, b.values);
    // replication r of seed s is replication 0 of seed s + r
    const auto shifted = simulate_path(d, pol, noise, {50, 1, 45});
    const auto row3 = a.row(3);
    EXPECT_EQ(std::vector<double>(row3.begin(), row3.end()), shifted.values);
    const auto other = simulate_path(d, pol, noise, {50, 4, 43});
    EXPECT_NE(a.values, other.values);
}

TEST(SimulatePath, PolicyOutsideIntervalNamesStep) {
    const MaximalDist d(0, 1);
    const auto escape = MeanPolicy::adversarial([](double, std::size_t step) { return step < 3 ? 0.5 : 2.0; });
    try {
        simulate_path(d, escape, NoiseSpec::none(), {10, 1, 0});
        FAIL() << "expected SimulationError";
    } catch (const SimulationError& e) {
        EXPECT_EQ(e.step(), 3u);
        EXPECT_NE(std::string(e.what()).find("step 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(simulate_path(d, MeanPolicy::constant(1.5), NoiseSpec::none(), {3, 1, 0}), Error);
    EXPECT_THROW(simulate_path(d, MeanPolicy::periodic({0.0, -0.1}), NoiseSpec::none(), {3, 1, 0}), Error);
}

TEST(SimulatePath, AdversarySeesRunningAverage) {
    const MaximalDist d(-1, 1);
    std::vector<double> seen;
    const auto contrarian = MeanPolicy::adversarial([&](double avg, std::size_t) {
        seen.push_back(avg);
        return avg > 0.0 ? -1.0 : 1.0;
    });
    const auto p = simulate_path(d, contrarian, NoiseSpec::none(), {4, 1, 0});
    EXPECT_EQ(p.values, (std::vector<double>{1, -1, 1, -1}));
    EXPECT_EQ(seen, (std::vector<double>{0.0, 1.0, 0.0, 1.0 / 3.0}));
}

TEST(SimConfig, Validation) {
    EXPECT_THROW((SimConfig{0, 1, 0}).validate(), ArgumentError);
    EXPECT_THROW((SimConfig{1, 0, 0}).validate(), ArgumentError);
    EXPECT_NO_THROW((SimConfig{1, 1, 0}).validate());
}

TEST(Parsing, PoliciesAndNoise) {
    EXPECT_EQ(MeanPolicy::parse("constant:0.5").label(), "constant:0.5");
    EXPECT_EQ(MeanPolicy::parse("periodic:-1;1").label(), "periodic:-1;1");
    EXPECT_EQ(MeanPolicy::parse("random:0;0.25;1").label(), "random:0;0.25;1");
    EXPECT_THROW(MeanPolicy::parse("constant"), ArgumentError);
    EXPECT_THROW(MeanPolicy::parse("constant:1;2"), ArgumentError);
    EXPECT_THROW(MeanPolicy::parse("drift:1"), ArgumentError);
    EXPECT_THROW(MeanPolicy::parse("periodic:a;b"), ArgumentError);

    EXPECT_EQ(NoiseSpec::parse("none").kind, NoiseSpec::Kind::none);
    EXPECT_EQ(NoiseSpec::parse("uniform:0.3").half_width, 0.3);
    EXPECT_EQ(NoiseSpec::parse("two_point:2").kind, NoiseSpec::Kind::two_point);
    EXPECT_THROW(NoiseSpec::parse("uniform:0"), ArgumentError);
    EXPECT_THROW(NoiseSpec::parse("uniform:-1"), ArgumentError);
    EXPECT_THROW(NoiseSpec::parse("gauss:1"), ArgumentError);
}

TEST(LogSchedule, Values) {
    EXPECT_EQ(log_schedule(1), (std::vector<std::size_t>{1}));
    EXPECT_EQ(log_schedule(1000), (std::vector<std::size_t>{1, 10, 100, 1000}));
    EXPECT_EQ(log_schedule(250), (std::vector<std::size_t>{1, 10, 100, 250}));
    EXPECT_THROW(log_schedule(0), ArgumentError);
}

TEST(SecondMomentUpper, Examples) {
    EXPECT_EQ(second_moment_upper(MaximalDist(0, 0), NoiseSpec::none()), 0.0);
    EXPECT_EQ(second_moment_upper(MaximalDist(-1, 2), NoiseSpec::none()), 4.0);
    EXPECT_DOUBLE_EQ(second_moment_upper(MaximalDist(-1, 1), NoiseSpec::uniform(0.3)), 1.03);
    EXPECT_EQ(second_moment_upper(MaximalDist(-1, 1), NoiseSpec::two_point(0.5)), 1.25);
}

TEST(EmpiricalLln, DegenerateInterval) {
    const MeanPolicy pols[] = {MeanPolicy::constant(0.0)};
    const auto rep = empirical_lln(MaximalDist(0, 0), identity(), pols, NoiseSpec::none(), {1000, 5, 1},
                                   GridSpec{0.1});
    EXPECT_EQ(rep.target.value, 0.0);
    for (const auto& r : rep.rows) {
        EXPECT_EQ(r.estimate, 0.0);
        EXPECT_EQ(r.gap, 0.0);
    }
    EXPECT_EQ(LlnReport::estimate_kind, "lower_bound");
}

TEST(EmpiricalLln, EndpointPoliciesHitTarget) {
    const MeanPolicy pols[] = {MeanPolicy::constant(-1.0), MeanPolicy::constant(1.0)};
    const auto rep = empirical_lln(MaximalDist(-1, 1), identity(), pols, NoiseSpec::none(), {1000, 3, 2},
                                   GridSpec{0.01});
    EXPECT_EQ(rep.target.value, 1.0);
    for (std::size_t n : log_schedule(1000)) {
        const auto& s = sup_row(rep.rows, n);
        EXPECT_EQ(s.estimate, 1.0);
        EXPECT_EQ(s.gap, 0.0);
    }
    EXPECT_EQ(rep.rows.size(), 4u * 3u);
}

TEST(EmpiricalLln, SquareWithUniformNoise) {
    const MeanPolicy pols[] = {MeanPolicy::constant(-1.0), MeanPolicy::constant(0.0), MeanPolicy::constant(1.0)};
    const BoundedLipschitzFn sq{[](double x) { return x * x; }, 3.0};
    const auto rep = empirical_lln(MaximalDist(-1, 1), sq, pols, NoiseSpec::uniform(0.1), {10000, 50, 2024},
                                   GridSpec{1e-3});
    EXPECT_EQ(rep.target.value, 1.0);
    const auto& last = sup_row(rep.rows, 10000);
    // bound E[X^2]/n plus three standard errors
    EXPECT_LT(last.gap, 0.05);
    EXPECT_LE(last.gap, (1.0 + 0.01 / 3.0) / 10000.0 + 3.0 * last.std_error + 1e-12);
}

TEST(EmpiricalLln, GapShrinksForArgmaxPolicy) {
    const MeanPolicy pols[] = {MeanPolicy::constant(1.0)};
    const BoundedLipschitzFn f{[](double x) { return -std::abs(x - 1.0); }, 1.0};
    const auto rep = empirical_lln(MaximalDist(-1, 1), f, pols, NoiseSpec::uniform(0.5), {10000, 200, 8},
                                   GridSpec{1e-3});
    double prev_gap = INFINITY, prev_se = 0.0;
    for (std::size_t n : log_schedule(10000)) {
        const auto& s = sup_row(rep.rows, n);
        EXPECT_LE(s.gap, prev_gap + 3.0 * (s.std_error + prev_se));
        prev_gap = s.gap;
        prev_se = s.std_error;
    }
}

TEST(RateCheck, NoNoiseGivesZero) {
    const MeanPolicy pols[] = {MeanPolicy::periodic({-1.0, 0.3, 1.0}), MeanPolicy::random({-1.0, 1.0})};
    const std::size_t sched[] = {1, 7, 100};
    const auto t = rate_check(MaximalDist(-1, 1), pols, NoiseSpec::none(), {1, 20, 4}, sched);
    for (const auto& r : t.rows) {
        EXPECT_EQ(r.estimate, 0.0);
        EXPECT_FALSE(r.violation);
    }
}

TEST(RateCheck, DegenerateIntervalMatchesUniformVariance) {
    const double a = 0.6;
    const MeanPolicy pols[] = {MeanPolicy::constant(0.0)};
    const std::size_t sched[] = {1, 10, 100};
    const auto t = rate_check(MaximalDist(0, 0), pols, NoiseSpec::uniform(a), {1, 4000, 31}, sched);
    EXPECT_DOUBLE_EQ(t.second_moment, a * a / 3.0);
    for (const auto& r : t.rows) {
        const double exact = a * a / (3.0 * static_cast<double>(r.n));
        EXPECT_DOUBLE_EQ(r.target_or_bound, exact);
        EXPECT_NEAR(r.estimate, exact, 4.0 * r.std_error) << "n=" << r.n;
        EXPECT_FALSE(r.violation);
    }
}

TEST(RateCheck, BoundForTwoPointNoise) {
    const MeanPolicy pols[] = {MeanPolicy::constant(1.0)};
    const std::size_t sched[] = {100, 10};
    const auto t = rate_check(MaximalDist(-1, 1), pols, NoiseSpec::two_point(0.5), {1, 100, 3}, sched);
    EXPECT_EQ(t.second_moment, 1.25);
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.rows[0].n, 10u);
    EXPECT_DOUBLE_EQ(t.rows[0].target_or_bound, 0.125);
    EXPECT_DOUBLE_EQ(t.rows[3].target_or_bound, 0.0125);
    EXPECT_FALSE(t.any_violation());
}

TEST(RateCheck, NeverViolatesOnRandomConfigurations) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double p = u(rng), q = u(rng);
        const MaximalDist d(std::min(p, q), std::max(p, q));
        std::uniform_real_distribution<double> in(d.mu_lo(), d.mu_hi());
        const MeanPolicy pols[] = {MeanPolicy::constant(in(rng)), MeanPolicy::periodic({d.mu_lo(), d.mu_hi()}),
                                   MeanPolicy::random({in(rng), in(rng), d.mu_hi()})};
        const NoiseSpec noise = (trial % 2) ? NoiseSpec::uniform(0.1 + std::abs(u(rng)))
                                            : NoiseSpec::two_point(0.1 + std::abs(u(rng)));
        const std::size_t sched[] = {1, 10, 100, 500};
        const auto t = rate_check(d, pols, noise, {1, 300, rng()}, sched);
        EXPECT_FALSE(t.any_violation()) << "trial " << trial;
    }
}

TEST(RateCheck, Errors) {
    const MeanPolicy pols[] = {MeanPolicy::constant(0.0)};
    const std::size_t zero[] = {0};
    EXPECT_THROW(rate_check(MaximalDist(0, 1), pols, NoiseSpec::none(), {1, 1, 0}, zero), ArgumentError);
    EXPECT_THROW(rate_check(MaximalDist(0, 1), std::span<const MeanPolicy>{}, NoiseSpec::none(), {1, 1, 0},
                            std::span<const std::size_t>{}),
                 ArgumentError);
}

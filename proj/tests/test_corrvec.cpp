#include "telebell/corrvec.hpp"

#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace telebell;
using telebell::testing::kPi;
using telebell::testing::kSqrtHalf;

namespace {

void expect_vec(const CorrelationVector &v, double x, double y, double tol = 1e-12) {
    EXPECT_NEAR(v.x, x, tol);
    EXPECT_NEAR(v.y, y, tol);
}

SuperVector random_super(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    SuperVector v;
    for (auto &e : v) {
        e = {u(rng), u(rng)};
    }
    return v;
}

}  // namespace

TEST(AliceValue, mapping) {
    EXPECT_EQ(alice_value(BellOutcome::k00), (OutcomeVector{Sign(-1), Sign(-1)}));
    EXPECT_EQ(alice_value(BellOutcome::k01), (OutcomeVector{Sign(-1), Sign(1)}));
    EXPECT_EQ(alice_value(BellOutcome::k10), (OutcomeVector{Sign(1), Sign(-1)}));
    EXPECT_EQ(alice_value(BellOutcome::k11), (OutcomeVector{Sign(1), Sign(1)}));
    std::set<std::pair<int, int>> seen;
    for (auto c : kBellOutcomes) {
        seen.insert({alice_value(c).first.value(), alice_value(c).second.value()});
    }
    EXPECT_EQ(seen.size(), 4u);
    EXPECT_EQ(bob_value(BobOutcome::k0).value(), -1);
    EXPECT_EQ(bob_value(BobOutcome::k1).value(), 1);
}

TEST(Sign, rejects_non_unit_values) {
    EXPECT_THROW(Sign(0), std::invalid_argument);
    EXPECT_THROW(Sign(2), std::invalid_argument);
    EXPECT_EQ((-Sign(1)).value(), -1);
}

TEST(CorrelationFromDistribution, examples) {
    JointDistribution uniform;
    for (auto c : kBellOutcomes) {
        for (auto i : kBobOutcomes) {
            uniform(c, i) = 0.125;
        }
    }
    expect_vec(correlation_from_distribution(uniform), 0, 0);

    expect_vec(correlation_from_distribution(joint_distribution_closed_form({kPi / 4, 0}, {kPi / 4, 0})), 1, 0);

    JointDistribution point;
    point(BellOutcome::k00, BobOutcome::k0) = 1.0;
    expect_vec(correlation_from_distribution(point), 1, 1);
}

TEST(CorrelationClosedForm, examples) {
    expect_vec(correlation_closed_form({kPi / 4, 0}, {kPi / 4, -kPi / 4}), kSqrtHalf, 0);
    expect_vec(correlation_closed_form({kPi / 4, kPi / 2}, {kPi / 4, kPi / 4}), 0, kSqrtHalf);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
        auto p = telebell::testing::random_preparation(rng);
        p.beta = 0;
        expect_vec(correlation_closed_form(p, telebell::testing::random_analyzer(rng)), 0, 0, 1e-15);
    }
}

TEST(CorrelationClosedForm, agrees_with_both_distribution_routes) {
    double worst = 0;
    for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 12; ++j) {
            for (int k = 0; k <= 12; ++k) {
                for (int l = 0; l <= 12; ++l) {
                    const PreparationSettings p{i * kPi / 12, -kPi + j * kPi / 6};
                    const AnalyzerSettings a{k * kPi / 12, -kPi + l * kPi / 6};
                    const auto e = correlation_closed_form(p, a);
                    const auto f = correlation_from_distribution(joint_distribution_closed_form(p, a));
                    const auto g = correlation_from_distribution(joint_distribution_simulated(p, a));
                    worst = std::max({worst, std::abs(e.x - f.x), std::abs(e.y - f.y), std::abs(e.x - g.x),
                                      std::abs(e.y - g.y)});
                    EXPECT_LE(std::abs(e.x), 1.0 + 1e-15);
                    EXPECT_LE(std::abs(e.y), 1.0 + 1e-15);
                }
            }
        }
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(CorrelationClosedForm, unit_l1_ball_at_45_degrees) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    for (int t = 0; t < 1000; ++t) {
        const auto e = correlation_closed_form({kPi / 4, phase(rng)}, {kPi / 4, phase(rng)});
        EXPECT_LE(std::abs(e.x) + std::abs(e.y), 1.0 + 1e-12);
    }
}

TEST(CorrelationFromDistribution, negating_bob_negates_the_vector) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const auto d = joint_distribution_closed_form(telebell::testing::random_preparation(rng),
                                                      telebell::testing::random_analyzer(rng));
        const auto e = correlation_from_distribution(d);
        const auto f = correlation_from_distribution_flipped(d);
        EXPECT_EQ(e.x, -f.x);
        EXPECT_EQ(e.y, -f.y);
    }
}

TEST(SuperVector, quantum_entries) {
    const SuperVector v = build_quantum_super_vector();
    expect_vec(v[0], kSqrtHalf, 0);
    expect_vec(v[1], kSqrtHalf, 0);
    expect_vec(v[2], 0, -kSqrtHalf);
    expect_vec(v[3], 0, kSqrtHalf);

    const SuperVector sim = build_super_vector(joint_distribution_simulated);
    for (std::size_t k = 0; k < 4; ++k) {
        expect_vec(sim[k], v[k].x, v[k].y);
    }
}

TEST(SuperVector, norm_and_dot) {
    const SuperVector v = build_quantum_super_vector();
    EXPECT_NEAR(super_norm_sq(v), 2.0, 1e-12);
    EXPECT_NEAR(super_dot(v, v), 2.0, 1e-12);
    const SuperVector zero{};
    EXPECT_EQ(super_norm_sq(zero), 0.0);
    EXPECT_EQ(super_dot(v, zero), 0.0);
    SuperVector ones;
    ones.fill({1, 1});
    EXPECT_EQ(super_norm_sq(ones), 8.0);
}

TEST(SuperVector, bilinear_and_cauchy_schwarz) {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 500; ++t) {
        const SuperVector a = random_super(rng), b = random_super(rng), c = random_super(rng);
        SuperVector bc;
        for (std::size_t k = 0; k < 4; ++k) {
            bc[k] = b[k] + c[k];
        }
        EXPECT_NEAR(super_dot(a, bc), super_dot(a, b) + super_dot(a, c), 1e-12);
        EXPECT_NEAR(super_dot(a, a), super_norm_sq(a), 1e-12);
        EXPECT_LE(super_dot(a, b) * super_dot(a, b), super_norm_sq(a) * super_norm_sq(b) + 1e-12);
        EXPECT_NEAR(super_dot(scaled(a, 0.3), b), 0.3 * super_dot(a, b), 1e-12);
    }
}

TEST(GridSuperVector, dot_and_length_check) {
    const GridSuperVector a{{1, 0}, {0, 1}, {0.5, 0.5}};
    const GridSuperVector b{{2, 0}, {0, -1}, {1, 1}};
    EXPECT_DOUBLE_EQ(super_dot(a, b), 2 - 1 + 1);
    EXPECT_DOUBLE_EQ(super_norm_sq(a), 2.5);
    EXPECT_THROW(super_dot(a, GridSuperVector{{1, 1}}), std::invalid_argument);
}

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "morse/control.hpp"

using morse::MorsePotential;
using morse::ProductState;
using morse::RotationPlan;
using morse::TwoModeSystem;

namespace {

constexpr double pi = std::numbers::pi;

TwoModeSystem analytic_pair(double d1 = 0.609, double d2 = 0.607) {
    return TwoModeSystem(morse::mode_from_analytic(MorsePotential(10.0), d1, 1),
                         morse::mode_from_analytic(MorsePotential(12.0), d2, 2));
}

}  // namespace

TEST(AnglesOf, Examples) {
    EXPECT_DOUBLE_EQ(morse::angles_of(1.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(morse::angles_of(0.0, 1.0), pi / 2);
    EXPECT_NEAR(morse::angles_of(std::sqrt(0.5), std::sqrt(0.5)), pi / 4, 1e-15);
    EXPECT_THROW(morse::angles_of(1.0, 1.0), morse::NotNormalized);
    EXPECT_THROW(morse::angles_of(0.5, 0.5), morse::NotNormalized);
}

TEST(PlanRotation, Examples) {
    const auto same = morse::plan_rotation({0.3, -1.2}, {0.3, -1.2});
    EXPECT_EQ(same.delta1, 0.0);
    EXPECT_EQ(same.delta2, 0.0);
    const auto flip = morse::plan_rotation({0.0, 0.0}, {pi / 2, 0.0});
    EXPECT_DOUBLE_EQ(flip.delta1, pi / 2);
    EXPECT_EQ(flip.delta2, 0.0);
    const auto swap = morse::plan_rotation({pi / 4, -pi / 4}, {-pi / 4, pi / 4});
    EXPECT_NEAR(swap.delta1, -pi / 2, 1e-15);
    EXPECT_NEAR(swap.delta2, pi / 2, 1e-15);
}

TEST(ApplyRotation, Examples) {
    const ProductState s{0.4, -2.0};
    const auto id = morse::apply_rotation({0.0, 0.0}, s);
    EXPECT_EQ(id.theta1, s.theta1);
    EXPECT_EQ(id.theta2, s.theta2);
    const auto both = morse::apply_rotation({pi / 2, pi / 2}, {0.0, 0.0});
    EXPECT_DOUBLE_EQ(both.theta1, pi / 2);
    EXPECT_DOUBLE_EQ(both.theta2, pi / 2);
    const RotationPlan r{1.1, -2.7};
    const auto back = morse::apply_rotation({-r.delta1, -r.delta2}, morse::apply_rotation(r, s));
    EXPECT_NEAR(back.theta1, s.theta1, 1e-12);
    EXPECT_NEAR(back.theta2, s.theta2, 1e-12);
}

TEST(Rotation, RandomPairsReachTargetWithOrthogonalFactors) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 1000; ++i) {
        const auto from = ProductState::from_angles(angle(rng), angle(rng));
        const auto to = ProductState::from_angles(angle(rng), angle(rng));
        const auto rot = morse::plan_rotation(from, to);
        const auto reached = morse::apply_rotation(rot, from);
        EXPECT_NEAR(std::cos(reached.theta1), std::cos(to.theta1), 1e-9);
        EXPECT_NEAR(std::sin(reached.theta1), std::sin(to.theta1), 1e-9);
        EXPECT_NEAR(std::cos(reached.theta2), std::cos(to.theta2), 1e-9);
        EXPECT_NEAR(std::sin(reached.theta2), std::sin(to.theta2), 1e-9);

        // the 4x4 product acting on the coefficient vector agrees with the angle update
        const auto u = rot.unitary();
        const double v[4] = {std::cos(from.theta1) * std::cos(from.theta2), std::cos(from.theta1) * std::sin(from.theta2),
                             std::sin(from.theta1) * std::cos(from.theta2), std::sin(from.theta1) * std::sin(from.theta2)};
        const double w[4] = {std::cos(to.theta1) * std::cos(to.theta2), std::cos(to.theta1) * std::sin(to.theta2),
                             std::sin(to.theta1) * std::cos(to.theta2), std::sin(to.theta1) * std::sin(to.theta2)};
        for (int r = 0; r < 4; ++r) {
            double acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += u[r][c] * v[c];
            EXPECT_NEAR(acc, w[r], 1e-9);
        }
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                double dot = 0.0;
                for (int k = 0; k < 4; ++k) dot += u[k][r] * u[k][c];
                EXPECT_NEAR(dot, r == c ? 1.0 : 0.0, 1e-12);
            }
        for (int label : {1, 2}) {
            const auto m = rot.factor(label);
            EXPECT_NEAR(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1.0, 1e-12);
        }
    }
}

TEST(PlanPulses, EmptyForIdentity) {
    EXPECT_TRUE(morse::plan_pulses(analytic_pair(), {0.0, 0.0}, 0.1).pulses.empty());
}

TEST(PlanPulses, SingleModeFlip) {
    const auto plan = morse::plan_pulses(analytic_pair(), {pi / 2, 0.0}, 0.1);
    ASSERT_EQ(plan.pulses.size(), 1u);
    const auto& p = plan.pulses[0];
    EXPECT_EQ(p.mode, 1);
    EXPECT_NEAR(p.area, pi, 1e-15);
    EXPECT_NEAR(p.duration, 51.59, 5e-3);
    EXPECT_NEAR(p.carrier, 4.944, 1e-3);
    EXPECT_EQ(p.direction, 1);
}

TEST(PlanPulses, DurationScalesInverselyWithAmplitude) {
    const auto sys = analytic_pair();
    const RotationPlan rot{0.7, -1.3};
    const auto base = morse::plan_pulses(sys, rot, 0.1);
    for (double k : {0.5, 2.0, 3.0, 10.0}) {
        const auto scaled = morse::plan_pulses(sys, rot, 0.1 * k);
        ASSERT_EQ(scaled.pulses.size(), base.pulses.size());
        for (std::size_t i = 0; i < base.pulses.size(); ++i)
            EXPECT_NEAR(scaled.pulses[i].duration * k, base.pulses[i].duration, 1e-12 * base.pulses[i].duration);
    }
    EXPECT_EQ(base.pulses[1].direction, -1);
}

TEST(PlanPulses, BetweenOuterAndInnerSets) {
    const auto sys = analytic_pair();
    const auto outer = morse::level_set(sys, -11.0, 64);
    const auto inner = morse::level_set(sys, -4.0, 64);
    const auto& a = outer.samples[outer.samples.size() / 3];
    const auto& b = inner.samples[5];
    const auto from = ProductState::from_angles(morse::angles_of(a.a1, std::sqrt(1 - a.a1 * a.a1)),
                                                morse::angles_of(a.a2, std::sqrt(1 - a.a2 * a.a2)));
    const auto to = ProductState::from_angles(morse::angles_of(b.a1, std::sqrt(1 - b.a1 * b.a1)),
                                              morse::angles_of(b.a2, std::sqrt(1 - b.a2 * b.a2)));
    EXPECT_NEAR(morse::energy_expectation(sys, from), -11.0, 1e-9);
    EXPECT_NEAR(morse::energy_expectation(sys, to), -4.0, 1e-9);
    const auto rot = morse::plan_rotation(from, to);
    EXPECT_NEAR(morse::energy_expectation(sys, morse::apply_rotation(rot, from)), -4.0, 1e-9);
    const auto plan = morse::plan_pulses(sys, rot, 0.1);
    ASSERT_EQ(plan.pulses.size(), 2u);
    EXPECT_NEAR(plan.pulses[0].carrier, 4.944, 1e-2);
    EXPECT_NEAR(plan.pulses[1].carrier, 5.798, 1e-2);
}

TEST(PlanPulses, Guards) {
    EXPECT_THROW(morse::plan_pulses(analytic_pair(1e-9), {0.5, 0.0}, 0.1), morse::ZeroDipole);
    EXPECT_NO_THROW(morse::plan_pulses(analytic_pair(1e-9), {0.0, 0.5}, 0.1));
    EXPECT_THROW(morse::plan_pulses(analytic_pair(), {0.5, 0.0}, 0.0), morse::InvalidArgument);
    EXPECT_THROW(morse::plan_pulses(analytic_pair(), {0.5, 0.0}, -1.0), morse::InvalidArgument);
}
